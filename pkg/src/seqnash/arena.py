"""Finite deterministic arenas, positional profiles, and induced plays.

An arena is a finite graph over a common choice alphabet.  Non-absorbing
states have one owner and a successor for every choice; absorbing states
carry an outcome and end the meaningful part of a play.  Plays that never
absorb are valued by the arena's default outcome.  Choice sequences may
continue freely past an absorbing state: the valuation is already fixed,
so those continuations are unconstrained.
"""

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from .preferences import PreferenceProfile

# State -> choice, defined on (a subset of) the non-absorbing states.
PositionalProfile = dict[str, str]


@dataclass(frozen=True)
class Arena:
    choices: tuple[str, ...]
    agents: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    owner: Mapping[str, str]
    transition: Mapping[tuple[str, str], str]
    absorbing_outcome: Mapping[str, str]
    default_outcome: str

    def is_absorbing(self, state: str) -> bool:
        return state in self.absorbing_outcome

    @cached_property
    def non_absorbing(self) -> tuple[str, ...]:
        return tuple(q for q in self.states if q not in self.absorbing_outcome)

    def successors(self, state: str) -> list[str]:
        return [self.transition[(state, c)] for c in self.choices]


@dataclass(frozen=True)
class Lasso:
    """A play on an arena: a finite prefix followed either by a repeated
    cycle of moves or by a terminal absorbing state."""

    prefix: tuple[tuple[str, str], ...]
    cycle: tuple[tuple[str, str], ...]
    terminal: str | None
    outcome: str

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        return self.prefix + self.cycle

    def state_at(self, position: int) -> str:
        if self.terminal is not None:
            if position >= len(self.prefix):
                return self.terminal
            return self.prefix[position][0]
        if position < len(self.prefix):
            return self.prefix[position][0]
        return self.cycle[(position - len(self.prefix)) % len(self.cycle)][0]

    def choice_at(self, position: int) -> str:
        pair = self.pairs
        if self.terminal is not None:
            return pair[position][1]
        if position < len(self.prefix):
            return self.prefix[position][1]
        return self.cycle[(position - len(self.prefix)) % len(self.cycle)][1]

    def advance(self, position: int) -> int:
        """Next play position; wraps to the cycle start on cycling plays."""
        nxt = position + 1
        if self.terminal is None and nxt >= len(self.pairs):
            return len(self.prefix)
        return nxt


def validate_arena(arena: Arena, prefs: PreferenceProfile) -> list[str]:
    """Report violated arena invariants; an empty report means valid.

    Unreachable states only produce ``warning:``-prefixed entries.
    """
    report: list[str] = []
    states = set(arena.states)
    if arena.initial not in states:
        report.append(f"unknown initial state {arena.initial}")
    for q in arena.non_absorbing:
        for c in arena.choices:
            if (q, c) not in arena.transition:
                report.append(f"transition not total: missing ({q}, {c})")
    for (q, c), target in arena.transition.items():
        if q not in states or target not in states:
            report.append(f"transition ({q}, {c}) -> {target} uses unknown state")
        elif arena.is_absorbing(q):
            report.append(f"transition from absorbing state {q}")
        if c not in arena.choices:
            report.append(f"transition ({q}, {c}) uses unknown choice")
    for q in arena.non_absorbing:
        if q not in arena.owner:
            report.append(f"owner missing for state {q}")
        elif arena.owner[q] not in arena.agents:
            report.append(f"owner of {q} is not a declared agent")
    for q in arena.owner:
        if q in arena.absorbing_outcome:
            report.append(f"owner declared for absorbing state {q}")
        elif q not in states:
            report.append(f"owner declared for unknown state {q}")
    declared = set(prefs.outcomes)
    for q, o in arena.absorbing_outcome.items():
        if o not in declared:
            report.append(f"unknown outcome {o} at absorbing state {q}")
    if arena.default_outcome not in declared:
        report.append(f"unknown outcome {arena.default_outcome} as default")
    if not report:
        reached = {arena.initial}
        frontier = [arena.initial]
        while frontier:
            q = frontier.pop()
            if arena.is_absorbing(q):
                continue
            for target in arena.successors(q):
                if target not in reached:
                    reached.add(target)
                    frontier.append(target)
        for q in arena.states:
            if q not in reached:
                report.append(f"warning: state {q} unreachable from initial")
    return report


def induced_play(arena: Arena, profile: PositionalProfile) -> Lasso:
    """Unique play obtained by iterating the profile from the initial state;
    the cycle closes at the first repeated state."""
    seen: dict[str, int] = {}
    pairs: list[tuple[str, str]] = []
    q = arena.initial
    while True:
        if arena.is_absorbing(q):
            return Lasso(tuple(pairs), (), q, arena.absorbing_outcome[q])
        if q in seen:
            i = seen[q]
            return Lasso(tuple(pairs[:i]), tuple(pairs[i:]), None, arena.default_outcome)
        seen[q] = len(pairs)
        c = profile[q]
        pairs.append((q, c))
        q = arena.transition[(q, c)]


def bounded_plays(arena: Arena, constraint: Mapping[str, str], depth: int) -> set[tuple[str, ...]]:
    """All depth-long choice sequences whose traversal from the initial
    state honours the constraint at every constrained state it meets."""
    out: set[tuple[str, ...]] = set()

    def walk(q: str, acc: tuple[str, ...]) -> None:
        if len(acc) == depth:
            out.add(acc)
            return
        if arena.is_absorbing(q):
            for c in arena.choices:
                walk(q, acc + (c,))
        elif q in constraint:
            c = constraint[q]
            walk(arena.transition[(q, c)], acc + (c,))
        else:
            for c in arena.choices:
                walk(arena.transition[(q, c)], acc + (c,))

    walk(arena.initial, ())
    return out


def possible_outcomes(arena: Arena, from_state: str,
                      constraint: Mapping[str, str]) -> tuple[set[str], bool]:
    """Outcomes reachable from ``from_state`` when constrained states must
    follow the constraint and every other state is free.

    The boolean reports whether a non-absorbing cycle is reachable, in
    which case the default outcome is part of the returned set.
    """
    reached: set[str] = set()
    frontier = [from_state]
    while frontier:
        q = frontier.pop()
        if q in reached:
            continue
        reached.add(q)
        if arena.is_absorbing(q):
            continue
        allowed = [constraint[q]] if q in constraint else arena.choices
        frontier.extend(arena.transition[(q, c)] for c in allowed)
    outcomes = {arena.absorbing_outcome[q] for q in reached if arena.is_absorbing(q)}
    live = [q for q in reached if not arena.is_absorbing(q)]

    def moves(q: str) -> list[str]:
        allowed = [constraint[q]] if q in constraint else arena.choices
        return [arena.transition[(q, c)] for c in allowed]

    cyclic = has_cycle(live, moves)
    if cyclic:
        outcomes.add(arena.default_outcome)
    return outcomes, cyclic


def has_cycle(nodes: Iterable[Hashable], successors: Callable) -> bool:
    """Kahn-style check for a directed cycle within the given node set;
    successors outside the set are ignored."""
    nodes = list(nodes)
    node_set = set(nodes)
    indegree = {q: 0 for q in nodes}
    for q in nodes:
        for r in successors(q):
            if r in node_set:
                indegree[r] += 1
    queue = [q for q in nodes if indegree[q] == 0]
    removed = 0
    while queue:
        q = queue.pop()
        removed += 1
        for r in successors(q):
            if r in node_set:
                indegree[r] -= 1
                if indegree[r] == 0:
                    queue.append(r)
    return removed < len(nodes)
