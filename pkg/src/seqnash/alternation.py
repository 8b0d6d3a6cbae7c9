"""Dummy-move insertion: turning any two-sided game into a strictly
alternating one.

Whenever the same side would move twice in a row, the opponent is forced
to play a designated dummy choice in between.  Refusing the dummy is
fatal for the refusing side: such plays leave the image of the original
game and are decided immediately through reserved absorbing states.
Winners at the initial state are preserved, and winning strategies
project back onto the original game.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .arena import Arena, PositionalProfile
from .winlose import (Objective, Reach, ReachOrNonAbsorbing, Safe, WinLoseGame,
                      opponent, swap_sides, verify_winning)

FATAL_WIN = "__fatal_win"    # the B side refused its dummy move; A wins
FATAL_LOSE = "__fatal_lose"  # the A side refused its dummy move; A loses


@dataclass(frozen=True)
class Alternated:
    original: WinLoseGame
    c0: str
    stretched: WinLoseGame
    fatal_a: frozenset[str]
    fatal_b: frozenset[str]
    swapped: bool

    def to_original_side(self, side: str) -> str:
        return opponent(side) if self.swapped else side


def iota_prefix(side_a: Callable[[tuple[str, ...]], bool],
                gamma: Sequence[str], c0: str) -> tuple[str, ...]:
    """Insertion image of a finite choice sequence.

    ``side_a`` tells which histories belong to the first mover; it must
    hold on the empty history.  A dummy ``c0`` is appended after every
    move that keeps the mover unchanged.
    """
    gamma = tuple(gamma)
    image: list[str] = []
    for i, c in enumerate(gamma):
        if side_a(gamma[:i]) == side_a(gamma[:i + 1]):
            image += [c, c0]
        else:
            image.append(c)
    return tuple(image)


def _dummy(state: str) -> str:
    return f"{state}@dummy"


def stretch(game: WinLoseGame, c0: str | None = None) -> Alternated:
    """Interpose dummy states so the two sides strictly alternate.

    If the initial state belongs to side B, the sides are relabelled and
    the objective complemented first; ``swapped`` records this so results
    can be mapped back.
    """
    arena = game.arena
    if c0 is None:
        c0 = arena.choices[0]
    elif c0 not in arena.choices:
        raise ValueError(f"unknown dummy choice: {c0}")
    swapped = game.side_of.get(arena.initial) == "B"
    norm = swap_sides(game) if swapped else game

    needs_dummy = sorted(
        {target for q in arena.non_absorbing for target in arena.successors(q)
         if not arena.is_absorbing(target) and norm.side_of[q] == norm.side_of[target]},
        key=arena.states.index)
    for q in needs_dummy:
        if _dummy(q) in arena.states:
            raise ValueError(f"state name collision: {_dummy(q)}")
    if FATAL_WIN in arena.states or FATAL_LOSE in arena.states:
        raise ValueError("arena reserves the fatal state names")

    states: list[str] = []
    side_of: dict[str, str] = {}
    for q in arena.states:
        states.append(q)
        if q in norm.side_of:
            side_of[q] = norm.side_of[q]
        if q in needs_dummy:
            d = _dummy(q)
            states.append(d)
            side_of[d] = opponent(norm.side_of[q])

    transition: dict[tuple[str, str], str] = {}
    fatal_a: set[str] = set()
    fatal_b: set[str] = set()
    for q in arena.non_absorbing:
        for c in arena.choices:
            target = arena.transition[(q, c)]
            if target in needs_dummy and norm.side_of[q] == norm.side_of[target]:
                transition[(q, c)] = _dummy(target)
            else:
                transition[(q, c)] = target
    for q in needs_dummy:
        d = _dummy(q)
        fatal = FATAL_WIN if side_of[d] == "B" else FATAL_LOSE
        if side_of[d] == "B":
            fatal_a.add(FATAL_WIN)
        else:
            fatal_b.add(FATAL_LOSE)
        for c in arena.choices:
            transition[(d, c)] = q if c == c0 else fatal

    absorbing = dict(arena.absorbing_outcome)
    if fatal_a:
        states.append(FATAL_WIN)
        absorbing[FATAL_WIN] = FATAL_WIN
    if fatal_b:
        states.append(FATAL_LOSE)
        absorbing[FATAL_LOSE] = FATAL_LOSE

    objective = norm.objective
    if isinstance(objective, Reach):
        new_objective: Objective = Reach(objective.target | frozenset(fatal_a))
    elif isinstance(objective, Safe):
        new_objective = Safe(objective.avoid | frozenset(fatal_b))
    else:
        new_objective = ReachOrNonAbsorbing(objective.target | frozenset(fatal_a))

    stretched_arena = Arena(
        choices=arena.choices,
        agents=("A", "B"),
        states=tuple(states),
        initial=arena.initial,
        owner=side_of,
        transition=transition,
        absorbing_outcome=absorbing,
        default_outcome=arena.default_outcome,
    )
    stretched = WinLoseGame(stretched_arena, side_of, new_objective)
    return Alternated(original=game, c0=c0, stretched=stretched,
                      fatal_a=frozenset(fatal_a), fatal_b=frozenset(fatal_b),
                      swapped=swapped)


def pull_back(alternated: Alternated, stretched_strategy: PositionalProfile,
              side: str) -> PositionalProfile:
    """Project a winning strategy of the stretched game onto the original
    arena's states; the projection is checked to win the original game
    from its initial state."""
    original = alternated.original
    original_side = alternated.to_original_side(side)
    profile = {q: stretched_strategy[q] for q in original.arena.non_absorbing
               if original.side_of[q] == original_side}
    if not verify_winning(original, original_side, profile, original.arena.initial):
        raise ValueError("stretched strategy does not project to a winning one")
    return profile
