"""Preference relations: acyclicity checks, ranks, and linear extensions.

Agents compare outcomes through strict binary relations that need not be
total.  Solving requires a strict total order per agent; the extension is
built deterministically from the rank of each outcome in the inverted
relation, with ties broken by the declared outcome order.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property


class PreferenceNotWellFounded(Exception):
    """The inverse of an agent's preference relation is not strictly
    well-founded; on finite outcome sets this means the relation has a
    directed cycle (self-loops included)."""

    def __init__(self, agent: str, cycle: list[str]):
        self.agent = agent
        self.cycle = list(cycle)
        super().__init__(f"preference cycle for agent {agent}: {' '.join(self.cycle)}")


@dataclass(frozen=True)
class PreferenceProfile:
    """Declared outcomes plus one strict relation per agent.

    The declared outcome order doubles as the ambient tie-break order used
    when linearising preferences.  A pair ``(o, o2)`` in an agent's
    relation means the agent strictly prefers ``o2`` over ``o``.
    """

    outcomes: tuple[str, ...]
    relation_of: Mapping[str, frozenset[tuple[str, str]]]

    def relation(self, agent: str) -> frozenset[tuple[str, str]]:
        if agent not in self.relation_of:
            raise ValueError(f"unknown agent: {agent}")
        return frozenset(self.relation_of[agent])

    def outcome_index(self, outcome: str) -> int:
        return self.outcomes.index(outcome)


@dataclass(frozen=True)
class LinearPreference:
    """A strict total order over the outcomes, listed worst to best."""

    agent: str
    order: tuple[str, ...]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {o: i for i, o in enumerate(self.order)}

    def index(self, outcome: str) -> int:
        return self._index[outcome]

    def less(self, a: str, b: str) -> bool:
        return self._index[a] < self._index[b]

    @property
    def minimum(self) -> str:
        return self.order[0]

    @property
    def maximum(self) -> str:
        return self.order[-1]


@dataclass(frozen=True)
class TerminalInterval:
    """Upward-closed outcome set under an agent's linear order.

    Fully characterised by its minimum element (None for the empty
    interval); the member set is kept for direct subset tests.
    """

    agent: str
    members: frozenset[str]
    minimum: str | None

    def __bool__(self) -> bool:
        return bool(self.members)


def check_strictly_well_founded(prefs: PreferenceProfile, agent: str) -> list[str] | None:
    """Return None when the agent's relation is acyclic, else one witness
    cycle as a list of outcomes (a singleton for a self-loop)."""
    relation = prefs.relation(agent)
    for x, y in relation:
        if x not in prefs.outcomes or y not in prefs.outcomes:
            raise ValueError(f"relation of {agent} mentions undeclared outcome")
    pos = {o: i for i, o in enumerate(prefs.outcomes)}
    succ = {o: sorted({y for x, y in relation if x == o}, key=pos.__getitem__)
            for o in prefs.outcomes}
    color = dict.fromkeys(prefs.outcomes, 0)  # 0 unvisited, 1 on stack, 2 done
    path: list[str] = []

    def visit(o: str) -> list[str] | None:
        color[o] = 1
        path.append(o)
        for y in succ[o]:
            if color[y] == 1:
                return path[path.index(y):]
            if color[y] == 0:
                cycle = visit(y)
                if cycle is not None:
                    return cycle
        path.pop()
        color[o] = 2
        return None

    for o in prefs.outcomes:
        if color[o] == 0:
            cycle = visit(o)
            if cycle is not None:
                return cycle
    return None


def rank(prefs: PreferenceProfile, agent: str) -> dict[str, int]:
    """Rank outcomes: 0 for outcomes with nothing strictly above them in the
    inverted relation, else one more than the largest rank above."""
    cycle = check_strictly_well_founded(prefs, agent)
    if cycle is not None:
        raise PreferenceNotWellFounded(agent, cycle)
    relation = prefs.relation(agent)
    above = {o: [y for x, y in relation if x == o] for o in prefs.outcomes}
    memo: dict[str, int] = {}

    def rho(o: str) -> int:
        if o not in memo:
            memo[o] = max((rho(y) + 1 for y in above[o]), default=0)
        return memo[o]

    return {o: rho(o) for o in prefs.outcomes}


def linear_extension(prefs: PreferenceProfile, agent: str) -> LinearPreference:
    """Deterministic strict total order containing the agent's relation.

    Outcomes are ordered worst to best by descending rank, ties resolved by
    the declared outcome order (later declarations end up worse).
    """
    rho = rank(prefs, agent)
    pos = {o: i for i, o in enumerate(prefs.outcomes)}
    worst_first = sorted(prefs.outcomes, key=lambda o: (rho[o], pos[o]), reverse=True)
    return LinearPreference(agent=agent, order=tuple(worst_first))


def upward_closure(linear: LinearPreference, outcomes: Iterable[str]) -> TerminalInterval:
    """Smallest upward-closed set containing the given outcomes."""
    outcomes = set(outcomes)
    if not outcomes:
        return TerminalInterval(linear.agent, frozenset(), None)
    lo = min(linear.index(o) for o in outcomes)
    return TerminalInterval(linear.agent, frozenset(linear.order[lo:]), linear.order[lo])
