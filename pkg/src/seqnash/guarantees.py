"""Agent guarantees: what an agent can secure from a state on its own.

The guarantee of an agent under a profile is the smallest terminal
interval covering every outcome still possible once the agent commits to
its own choices and everyone else stays free.  The best guarantee is the
smallest such interval over all of the agent's positional strategies; it
is found by a descending threshold scan, one win-lose game per outcome.
"""

from collections.abc import Mapping
from dataclasses import dataclass

from .arena import Arena, PositionalProfile, possible_outcomes
from .preferences import LinearPreference, TerminalInterval, upward_closure
from .winlose import Reach, ReachOrNonAbsorbing, Verdict, WinLoseGame, solve


@dataclass(frozen=True)
class GuaranteeResult:
    agent: str
    state: str
    interval: TerminalInterval
    witness: PositionalProfile | None


def agent_constraint(arena: Arena, agent: str, profile: Mapping[str, str]) -> dict[str, str]:
    """The agent's part of a profile, as a constraint map."""
    return {q: profile[q] for q in arena.non_absorbing if arena.owner[q] == agent}


def threshold_game(arena: Arena, linear: LinearPreference, agent: str,
                   outcome: str, *, strict: bool = False) -> WinLoseGame:
    """Win-lose game in which side A (the agent) tries to force an outcome
    at least ``outcome`` (strictly above it when ``strict``)."""
    cut = linear.index(outcome) + (1 if strict else 0)
    target = frozenset(q for q, o in arena.absorbing_outcome.items()
                       if linear.index(o) >= cut)
    side_of = {q: "A" if arena.owner[q] == agent else "B" for q in arena.non_absorbing}
    if linear.index(arena.default_outcome) >= cut:
        objective = ReachOrNonAbsorbing(target)
    else:
        objective = Reach(target)
    return WinLoseGame(arena, side_of, objective)


class GuaranteeContext:
    """Caches threshold-game verdicts per (agent, outcome); each verdict
    answers best-guarantee queries for every state at once."""

    def __init__(self, arena: Arena, linears: Mapping[str, LinearPreference]):
        self.arena = arena
        self.linears = dict(linears)
        self._verdicts: dict[tuple[str, str], Verdict] = {}

    def threshold_verdict(self, agent: str, outcome: str) -> Verdict:
        key = (agent, outcome)
        if key not in self._verdicts:
            game = threshold_game(self.arena, self.linears[agent], agent, outcome)
            self._verdicts[key] = solve(game)
        return self._verdicts[key]

    def guarantee(self, agent: str, state: str,
                  constraint: Mapping[str, str]) -> TerminalInterval:
        outcomes, _ = possible_outcomes(self.arena, state, constraint)
        if not outcomes:
            raise AssertionError(f"no outcome achievable from {state}")
        return upward_closure(self.linears[agent], outcomes)

    def best_guarantee(self, agent: str, state: str) -> GuaranteeResult:
        linear = self.linears[agent]
        for outcome in reversed(linear.order):
            verdict = self.threshold_verdict(agent, outcome)
            if verdict.winner_at[state] == "A":
                interval = upward_closure(linear, {outcome})
                return GuaranteeResult(agent, state, interval, dict(verdict.strategy_a))
        raise AssertionError(f"agent {agent} secures nothing from {state}")


def guarantee(arena: Arena, linear: LinearPreference, agent: str, state: str,
              profile: Mapping[str, str]) -> TerminalInterval:
    """Guarantee of the agent at a state under a (total) profile; only the
    agent's own choices in the profile matter."""
    ctx = GuaranteeContext(arena, {agent: linear})
    return ctx.guarantee(agent, state, agent_constraint(arena, agent, profile))


def best_guarantee(arena: Arena, linear: LinearPreference, agent: str,
                   state: str) -> GuaranteeResult:
    """Smallest securable guarantee at a state, with a witness strategy."""
    ctx = GuaranteeContext(arena, {agent: linear})
    return ctx.best_guarantee(agent, state)
