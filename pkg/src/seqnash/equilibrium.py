"""Equilibrium construction: deepening, threats, assembly, verification.

The pipeline walks the induced play, upgrading each node owner to a
guarantee-optimal strategy exactly when its current guarantee is not yet
best (a journal records each upgrade together with the play position it
scopes to).  The resulting play is then defended by per-agent coalition
threats: whoever leaves the play first is punished by everyone else with
a strategy that caps the deviator at the play's outcome.  Verification is
exact: a deviator facing the finite-memory machine plays a one-player
game on a finite product graph.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field

from .arena import Arena, Lasso, PositionalProfile, has_cycle, induced_play
from .guarantees import GuaranteeContext, agent_constraint, threshold_game
from .preferences import (LinearPreference, PreferenceProfile, TerminalInterval,
                          upward_closure)
from .winlose import Verdict, solve


class RefinementBudgetExceeded(Exception):
    """Deepening refined more often than the guarantee chains allow;
    signals a solver bug, never a property of the input."""


class ThreatFailure(Exception):
    """A deviator keeps a winning escape at some deviation state; signals
    an internal inconsistency between deepening and the threat games."""


@dataclass(frozen=True)
class JournalEntry:
    position: int
    agent: str
    replacement: dict[str, str]


@dataclass(frozen=True)
class JournaledProfile:
    """Base positional profile plus position-scoped replacements.

    An entry at position ``k`` means: on histories extending the play
    prefix of length ``k``, the entry's agent follows the replacement.
    """

    base: dict[str, str]
    journal: tuple[JournalEntry, ...]

    def effective(self, arena: Arena, agent: str, position: int) -> dict[str, str]:
        """The agent's positional constraint in force at a play position."""
        replacement = None
        for entry in self.journal:
            if entry.agent == agent and entry.position <= position:
                replacement = entry.replacement
        if replacement is not None:
            return dict(replacement)
        return agent_constraint(arena, agent, self.base)

    def final_profile(self, arena: Arena) -> dict[str, str]:
        """One total positional profile merging each agent's last word."""
        profile = dict(self.base)
        for entry in self.journal:
            profile.update(entry.replacement)
        return {q: profile[q] for q in arena.non_absorbing}


@dataclass(frozen=True)
class TraceStep:
    position: int
    state: str
    agent: str
    guarantee: TerminalInterval
    best: TerminalInterval
    refined: bool


@dataclass(frozen=True)
class EquilibriumMachine:
    """Finite-memory strategy profile: follow the play, and on the first
    divergence punish its owner forever with the coalition threat."""

    play: Lasso
    threats: Mapping[str, Mapping[str, str]]
    fillers: Mapping[str, str]

    def initial_mode(self) -> tuple:
        return ("follow", 0)

    def choice(self, arena: Arena, mode: tuple, state: str) -> str:
        if mode[0] == "follow":
            position = mode[1]
            if state != self.play.state_at(position):
                raise AssertionError("machine desynchronised from its play")
            return self.play.choice_at(position)
        punished = mode[1]
        if arena.owner[state] == punished:
            return self.fillers[state]
        return self.threats[punished][state]

    def step(self, arena: Arena, mode: tuple, state: str, choice: str) -> tuple:
        if mode[0] == "follow":
            position = mode[1]
            if choice == self.play.choice_at(position):
                return ("follow", self.play.advance(position))
            return ("punish", arena.owner[state])
        return mode

    def induced_play(self, arena: Arena) -> Lasso:
        seen: dict[tuple[str, tuple], int] = {}
        pairs: list[tuple[str, str]] = []
        q, mode = arena.initial, self.initial_mode()
        while True:
            if arena.is_absorbing(q):
                return Lasso(tuple(pairs), (), q, arena.absorbing_outcome[q])
            if (q, mode) in seen:
                i = seen[(q, mode)]
                return Lasso(tuple(pairs[:i]), tuple(pairs[i:]), None,
                             arena.default_outcome)
            seen[(q, mode)] = len(pairs)
            c = self.choice(arena, mode, q)
            pairs.append((q, c))
            q, mode = arena.transition[(q, c)], self.step(arena, mode, q, c)


def deepen(arena: Arena, linears: Mapping[str, LinearPreference],
           seed: PositionalProfile | None = None,
           ) -> tuple[JournaledProfile, Lasso, list[TraceStep]]:
    """Walk the induced play, refining owners to best guarantees only when
    needed; stops once a full cycle passes without refinement or the play
    absorbs.  Total refinements are bounded by |agents| * (|outcomes| + 1).
    """
    if seed is None:
        seed = {q: arena.choices[0] for q in arena.non_absorbing}
    ctx = GuaranteeContext(arena, linears)
    outcome_count = len(next(iter(linears.values())).order) if linears else 0
    budget = len(arena.agents) * (outcome_count + 1)

    current = {a: agent_constraint(arena, a, seed) for a in arena.agents}
    journal: list[JournalEntry] = []
    trace: list[TraceStep] = []
    walked: list[tuple[str, str]] = []
    seen_since_refine: dict[str, int] = {}
    refinements = 0
    position = 0
    q = arena.initial
    while True:
        if arena.is_absorbing(q):
            play = Lasso(tuple(walked), (), q, arena.absorbing_outcome[q])
            break
        if q in seen_since_refine:
            i = seen_since_refine[q]
            play = Lasso(tuple(walked[:i]), tuple(walked[i:]), None,
                         arena.default_outcome)
            break
        owner = arena.owner[q]
        have = ctx.guarantee(owner, q, current[owner])
        best = ctx.best_guarantee(owner, q)
        refined = have != best.interval
        trace.append(TraceStep(position, q, owner, have, best.interval, refined))
        if refined:
            refinements += 1
            if refinements > budget:
                raise RefinementBudgetExceeded(
                    f"{refinements} refinements exceed budget {budget}")
            journal.append(JournalEntry(position, owner, dict(best.witness)))
            current[owner] = dict(best.witness)
            seen_since_refine = {}
        seen_since_refine[q] = position
        c = current[owner][q]
        walked.append((q, c))
        q = arena.transition[(q, c)]
        position += 1
    sigma = JournaledProfile(base=dict(seed), journal=tuple(journal))
    return sigma, play, trace


def _threat_verdict(arena: Arena, linear: LinearPreference, agent: str,
                    threshold: str) -> tuple[PositionalProfile, Verdict]:
    game = threshold_game(arena, linear, agent, threshold, strict=True)
    verdict = solve(game)
    return dict(verdict.strategy_b), verdict


def threat(arena: Arena, linears: Mapping[str, LinearPreference], agent: str,
           threshold: str) -> PositionalProfile:
    """Coalition strategy over the other agents' states preventing the
    agent from securing anything strictly above the threshold."""
    profile, _ = _threat_verdict(arena, linears[agent], agent, threshold)
    return profile


def assemble(arena: Arena, linears: Mapping[str, LinearPreference],
             sigma: JournaledProfile, play: Lasso) -> EquilibriumMachine:
    """Build the equilibrium machine for a deepened play: one coalition
    threat per agent owning a play position, thresholded at the play's
    outcome, plus deterministic filler choices for the punished agent."""
    pairs = play.pairs
    on_path = {arena.owner[q] for q, _ in pairs}
    threats: dict[str, dict[str, str]] = {}
    for agent in arena.agents:
        if agent not in on_path:
            continue
        profile, verdict = _threat_verdict(arena, linears[agent], agent, play.outcome)
        for q, c in pairs:
            if arena.owner[q] != agent:
                continue
            for alt in arena.choices:
                if alt == c:
                    continue
                deviation = arena.transition[(q, alt)]
                if verdict.winner_at[deviation] != "B":
                    raise ThreatFailure(
                        f"agent {agent} escapes punishment at {deviation}")
        threats[agent] = profile
    return EquilibriumMachine(play=play, threats=threats,
                              fillers=sigma.final_profile(arena))


class _PositionalRule:
    """Environment rule for a plain positional profile."""

    def __init__(self, arena: Arena, profile: Mapping[str, str], free_agent: str):
        self.arena = arena
        self.profile = profile
        self.free = free_agent

    def start_mode(self) -> tuple:
        return ()

    def choice(self, mode: tuple, state: str) -> str | None:
        if self.arena.owner[state] == self.free:
            return None
        return self.profile[state]

    def step(self, mode: tuple, state: str, choice: str) -> tuple:
        return mode


class _MachineRule:
    """Environment rule for an equilibrium machine with one agent freed."""

    def __init__(self, arena: Arena, machine: EquilibriumMachine, free_agent: str):
        self.arena = arena
        self.machine = machine
        self.free = free_agent

    def start_mode(self) -> tuple:
        return self.machine.initial_mode()

    def choice(self, mode: tuple, state: str) -> str | None:
        if self.arena.owner[state] == self.free:
            return None
        return self.machine.choice(self.arena, mode, state)

    def step(self, mode: tuple, state: str, choice: str) -> tuple:
        return self.machine.step(self.arena, mode, state, choice)


class _JournalRule:
    """Constrains one agent to a journaled profile along a play; every
    other agent stays free.  Off-path, the constraint freezes to the entry
    active at the point of divergence."""

    def __init__(self, arena: Arena, agent: str, sigma: JournaledProfile, play: Lasso):
        self.arena = arena
        self.agent = agent
        self.sigma = sigma
        self.play = play
        self.entries = [e for e in sigma.journal if e.agent == agent]
        last = self.entries[-1].position + 1 if self.entries else 0
        # True positions are kept until past the last entry; beyond that,
        # positions inside the cycle are equivalent modulo its length.
        self.wrap_from = max(len(play.prefix), last)
        self.base_constraint = agent_constraint(arena, agent, sigma.base)

    def canonical(self, position: int) -> int:
        if self.play.terminal is not None or position < self.wrap_from:
            return position
        cycle_len = len(self.play.cycle)
        return self.wrap_from + (position - self.wrap_from) % cycle_len

    def start_mode(self, position: int) -> tuple:
        return ("on", self.canonical(position))

    def _constraint_at(self, position: int) -> Mapping[str, str]:
        replacement = None
        for entry in self.entries:
            if entry.position <= position:
                replacement = entry.replacement
        return replacement if replacement is not None else self.base_constraint

    def choice(self, mode: tuple, state: str) -> str | None:
        if self.arena.owner[state] != self.agent:
            return None
        if mode[0] == "on":
            if state != self.play.state_at(mode[1]):
                raise AssertionError("journal rule desynchronised from its play")
            return self.play.choice_at(mode[1])
        return self._constraint_at(mode[1])[state]

    def step(self, mode: tuple, state: str, choice: str) -> tuple:
        if mode[0] != "on":
            return mode
        position = mode[1]
        if choice == self.play.choice_at(position):
            return ("on", self.canonical(position + 1))
        return ("off", position)


def _explore(arena: Arena, rule, start_state: str, start_mode: tuple) -> tuple[set[str], bool]:
    """Outcomes the free states can steer to against a finite-memory rule;
    the flag reports a reachable product cycle (default outcome possible)."""
    start = (start_state, start_mode)
    succ: dict[tuple, list[tuple]] = {}
    outcomes: set[str] = set()
    frontier = [start]
    seen: set[tuple] = set()
    while frontier:
        node = frontier.pop()
        if node in seen:
            continue
        seen.add(node)
        q, mode = node
        if arena.is_absorbing(q):
            outcomes.add(arena.absorbing_outcome[q])
            continue
        fixed = rule.choice(mode, q)
        allowed = arena.choices if fixed is None else (fixed,)
        nexts = []
        for c in allowed:
            nxt = (arena.transition[(q, c)], rule.step(mode, q, c))
            nexts.append(nxt)
            frontier.append(nxt)
        succ[node] = nexts
    if has_cycle(succ.keys(), lambda n: succ.get(n, ())):
        outcomes.add(arena.default_outcome)
        return outcomes, True
    return outcomes, False


def journaled_guarantee(arena: Arena, linear: LinearPreference, agent: str,
                        sigma: JournaledProfile, play: Lasso,
                        position: int) -> TerminalInterval:
    """Guarantee of the agent at a play position against the limit profile,
    honouring the journal's position scoping exactly."""
    rule = _JournalRule(arena, agent, sigma, play)
    outcomes, _ = _explore(arena, rule, play.state_at(position),
                           rule.start_mode(position))
    return upward_closure(linear, outcomes)


def achievable_outcomes(arena: Arena, strategy, agent: str) -> tuple[set[str], bool]:
    """Outcome set one agent can reach by deviating arbitrarily while the
    rest follow the given machine or positional profile."""
    if isinstance(strategy, EquilibriumMachine):
        rule = _MachineRule(arena, strategy, agent)
    else:
        rule = _PositionalRule(arena, strategy, agent)
    return _explore(arena, rule, arena.initial, rule.start_mode())


def verify_nash(arena: Arena, prefs: PreferenceProfile,
                strategy) -> tuple[str, str] | None:
    """Stability check against the original (possibly partial) preferences.

    Returns None when stable, else the first agent (in declared order)
    with an achievable outcome it strictly prefers over the induced one,
    together with that outcome.  Exact over all deviation strategies.
    """
    if isinstance(strategy, EquilibriumMachine):
        base_outcome = strategy.induced_play(arena).outcome
    else:
        base_outcome = induced_play(arena, strategy).outcome
    for agent in arena.agents:
        achievable, _ = achievable_outcomes(arena, strategy, agent)
        relation = prefs.relation(agent)
        for o in prefs.outcomes:
            if o in achievable and (base_outcome, o) in relation:
                return (agent, o)
    return None


def solve_equilibrium(arena: Arena, prefs: PreferenceProfile,
                      seed: PositionalProfile | None = None,
                      ) -> tuple[EquilibriumMachine, JournaledProfile, list[TraceStep]]:
    """Full pipeline: linearise preferences, deepen, assemble threats."""
    from .preferences import linear_extension

    linears = {a: linear_extension(prefs, a) for a in arena.agents}
    sigma, play, trace = deepen(arena, linears, seed)
    machine = assemble(arena, linears, sigma, play)
    return machine, sigma, trace
