"""Shared test fixtures and independent brute-force oracles.

The oracles here deliberately avoid the solver code paths they are used
to check: they work by exhaustive enumeration of positional profiles and
by plain walks of the arena graph.
"""

import itertools

from seqnash.arena import Arena
from seqnash.preferences import LinearPreference, PreferenceProfile
from seqnash.winlose import Reach, ReachOrNonAbsorbing, Safe, WinLoseGame


def make_g_one() -> tuple[Arena, PreferenceProfile]:
    """One agent at one state: loop forever (losing) or step to a win."""
    arena = Arena(
        choices=("0", "1"),
        agents=("a",),
        states=("q0", "WIN"),
        initial="q0",
        owner={"q0": "a"},
        transition={("q0", "0"): "q0", ("q0", "1"): "WIN"},
        absorbing_outcome={"WIN": "w"},
        default_outcome="l",
    )
    prefs = PreferenceProfile(("l", "w"), {"a": frozenset({("l", "w")})})
    return arena, prefs


def make_g_threat() -> tuple[Arena, PreferenceProfile]:
    """Two agents: a moves first, b can punish a's greedy deviation."""
    arena = Arena(
        choices=("L", "R"),
        agents=("a", "b"),
        states=("r", "t", "O0", "O1", "O2"),
        initial="r",
        owner={"r": "a", "t": "b"},
        transition={("r", "L"): "O1", ("r", "R"): "t",
                    ("t", "L"): "O0", ("t", "R"): "O2"},
        absorbing_outcome={"O0": "o0", "O1": "o1", "O2": "o2"},
        default_outcome="bot",
    )
    prefs = PreferenceProfile(
        ("bot", "o0", "o1", "o2"),
        {"a": frozenset({("bot", "o0"), ("o0", "o1"), ("o1", "o2")}),
         "b": frozenset({("o2", "o0")})})
    return arena, prefs


def walk_outcome(arena: Arena, profile: dict[str, str], start: str) -> str:
    """Outcome of the positional play from ``start``: absorb or cycle."""
    q = start
    visited = set()
    while True:
        if arena.is_absorbing(q):
            return arena.absorbing_outcome[q]
        if q in visited:
            return arena.default_outcome
        visited.add(q)
        q = arena.transition[(q, profile[q])]


def walk_states(arena: Arena, profile: dict[str, str], start: str) -> tuple[list[str], bool]:
    """States visited by the positional play; flag marks absorption."""
    q = start
    seen: list[str] = []
    while True:
        if arena.is_absorbing(q):
            return seen + [q], True
        if q in seen:
            return seen, False
        seen.append(q)
        q = arena.transition[(q, profile[q])]


def maximin_by_enumeration(arena: Arena, linear: LinearPreference, agent: str,
                           state: str) -> str:
    """Best outcome the agent can secure from ``state``, over every split
    of the positional profile space."""
    mine = [q for q in arena.non_absorbing if arena.owner[q] == agent]
    theirs = [q for q in arena.non_absorbing if arena.owner[q] != agent]
    best = None
    for own in itertools.product(arena.choices, repeat=len(mine)):
        worst = None
        for other in itertools.product(arena.choices, repeat=len(theirs)):
            profile = dict(zip(mine, own)) | dict(zip(theirs, other))
            outcome = walk_outcome(arena, profile, state)
            if worst is None or linear.index(outcome) < linear.index(worst):
                worst = outcome
        if best is None or linear.index(worst) > linear.index(best):
            best = worst
    return best


def play_satisfies(game: WinLoseGame, profile: dict[str, str], start: str) -> bool:
    """Whether the positional play from ``start`` meets side A's objective."""
    arena = game.arena
    states, absorbed = walk_states(arena, profile, start)
    objective = game.objective
    if isinstance(objective, Reach):
        return absorbed and states[-1] in objective.target
    if isinstance(objective, Safe):
        return not absorbed or states[-1] not in objective.avoid
    return not absorbed or states[-1] in objective.target


def exhaustive_winner(game: WinLoseGame, state: str) -> str:
    """Winner at ``state`` by trying every positional strategy pair."""
    arena = game.arena
    a_states = [q for q in arena.non_absorbing if game.side_of[q] == "A"]
    b_states = [q for q in arena.non_absorbing if game.side_of[q] == "B"]
    for own in itertools.product(arena.choices, repeat=len(a_states)):
        sa = dict(zip(a_states, own))
        if all(play_satisfies(game, sa | dict(zip(b_states, other)), state)
               for other in itertools.product(arena.choices, repeat=len(b_states))):
            return "A"
    return "B"


def constrained_outcomes_by_paths(arena: Arena, start: str,
                                  constraint: dict[str, str]) -> tuple[set[str], bool]:
    """Independent recomputation of the achievable outcome set: enumerate
    every constrained path of length |states|; a path that long without
    absorbing must repeat a state, witnessing a cycle."""
    horizon = len(arena.states)
    outcomes: set[str] = set()
    cyclic = False

    def extend(q: str, depth: int) -> None:
        nonlocal cyclic
        if arena.is_absorbing(q):
            outcomes.add(arena.absorbing_outcome[q])
            return
        if depth == horizon:
            cyclic = True
            return
        allowed = [constraint[q]] if q in constraint else list(arena.choices)
        for c in allowed:
            extend(arena.transition[(q, c)], depth + 1)

    extend(start, 0)
    if cyclic:
        outcomes.add(arena.default_outcome)
    return outcomes, cyclic
