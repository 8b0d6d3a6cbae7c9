"""Two-sided win-lose games on arenas, solved by attractor computation.

Side A's objective is one of three shapes: reach a target set of absorbing
states, avoid a set of absorbing states forever, or reach the target
unless the play never absorbs at all.  All three are positionally
determined, and both winning strategies come out of a single attractor
fixpoint (reachability directly, safety through its complement).
"""

from collections.abc import Mapping
from dataclasses import dataclass

from .arena import Arena, PositionalProfile, has_cycle

SIDES = ("A", "B")


def opponent(side: str) -> str:
    return "B" if side == "A" else "A"


@dataclass(frozen=True)
class Reach:
    target: frozenset[str]


@dataclass(frozen=True)
class Safe:
    avoid: frozenset[str]


@dataclass(frozen=True)
class ReachOrNonAbsorbing:
    target: frozenset[str]


Objective = Reach | Safe | ReachOrNonAbsorbing


@dataclass(frozen=True)
class WinLoseGame:
    """Arena plus a two-way split of the non-absorbing states; the arena's
    own agent owners are ignored here."""

    arena: Arena
    side_of: Mapping[str, str]
    objective: Objective


@dataclass(frozen=True)
class Verdict:
    winner_at: Mapping[str, str]
    strategy_a: PositionalProfile
    strategy_b: PositionalProfile

    def strategy(self, side: str) -> PositionalProfile:
        return self.strategy_a if side == "A" else self.strategy_b


def attractor(game: WinLoseGame, side: str,
              target: frozenset[str] | set[str]) -> tuple[frozenset[str], PositionalProfile]:
    """Least set from which ``side`` can force entry into ``target``.

    The returned strategy moves to a successor in the lowest fixpoint
    layer, breaking ties by declared choice order.  Absorbing states join
    only through target membership.
    """
    arena = game.arena
    layer = {q: 0 for q in target}
    attr = set(target)
    round_no = 0
    while True:
        round_no += 1
        added = []
        for q in arena.non_absorbing:
            if q in attr:
                continue
            succs = arena.successors(q)
            if game.side_of[q] == side:
                if any(s in attr for s in succs):
                    added.append(q)
            elif all(s in attr for s in succs):
                added.append(q)
        if not added:
            break
        for q in added:
            attr.add(q)
            layer[q] = round_no
    choice_pos = {c: i for i, c in enumerate(arena.choices)}
    strategy: PositionalProfile = {}
    for q in arena.non_absorbing:
        if q not in attr or game.side_of[q] != side:
            continue
        inside = [c for c in arena.choices if arena.transition[(q, c)] in attr]
        if inside:
            strategy[q] = min(inside, key=lambda c: (layer[arena.transition[(q, c)]],
                                                     choice_pos[c]))
        else:
            strategy[q] = arena.choices[0]
    return frozenset(attr), strategy


def _all_absorbing(arena: Arena) -> frozenset[str]:
    return frozenset(arena.absorbing_outcome)


def _bad_states(arena: Arena, objective: Objective) -> frozenset[str]:
    """Absorbing states whose absorption loses for side A."""
    if isinstance(objective, Safe):
        return objective.avoid
    if isinstance(objective, ReachOrNonAbsorbing):
        return _all_absorbing(arena) - objective.target
    raise ValueError(f"malformed objective: {objective!r}")


def _evading_profile(game: WinLoseGame, side: str, danger: frozenset[str]) -> PositionalProfile:
    """For each state of ``side``, the first declared choice whose successor
    stays out of ``danger`` when the state itself is outside it."""
    arena = game.arena
    profile: PositionalProfile = {}
    for q in arena.non_absorbing:
        if game.side_of[q] != side:
            continue
        if q not in danger:
            profile[q] = next(c for c in arena.choices
                              if arena.transition[(q, c)] not in danger)
        else:
            profile[q] = arena.choices[0]
    return profile


def _completed(game: WinLoseGame, side: str, partial: PositionalProfile) -> PositionalProfile:
    arena = game.arena
    profile = dict(partial)
    for q in arena.non_absorbing:
        if game.side_of[q] == side and q not in profile:
            profile[q] = arena.choices[0]
    return profile


def solve(game: WinLoseGame) -> Verdict:
    """Winner and positional winning strategy for every state at once."""
    arena = game.arena
    objective = game.objective
    if isinstance(objective, Reach):
        attr, strat = attractor(game, "A", objective.target)
        winner = {q: "A" if q in attr else "B" for q in arena.states}
        strategy_a = _completed(game, "A", strat)
        strategy_b = _evading_profile(game, "B", attr)
    else:
        bad = _bad_states(arena, objective)
        attr, strat = attractor(game, "B", bad)
        winner = {q: "B" if q in attr else "A" for q in arena.states}
        strategy_b = _completed(game, "B", strat)
        strategy_a = _evading_profile(game, "A", attr)
    return Verdict(winner_at=winner, strategy_a=strategy_a, strategy_b=strategy_b)


def _constrained_reach(game: WinLoseGame, side: str, strategy: PositionalProfile,
                       from_state: str, stop_at: frozenset[str]) -> set[str]:
    """States reachable when ``side`` follows its strategy and the other
    side is free; states in ``stop_at`` are not expanded."""
    arena = game.arena
    reached: set[str] = set()
    frontier = [from_state]
    while frontier:
        q = frontier.pop()
        if q in reached:
            continue
        reached.add(q)
        if q in stop_at or arena.is_absorbing(q):
            continue
        allowed = [strategy[q]] if game.side_of[q] == side else arena.choices
        frontier.extend(arena.transition[(q, c)] for c in allowed)
    return reached


def _forces_reach(game: WinLoseGame, side: str, strategy: PositionalProfile,
                  from_state: str, target: frozenset[str]) -> bool:
    """Every play consistent with the strategy hits ``target``: no escape
    by absorbing elsewhere and no way to cycle forever."""
    arena = game.arena
    reached = _constrained_reach(game, side, strategy, from_state, target)
    for q in reached:
        if q not in target and arena.is_absorbing(q):
            return False
    live = [q for q in reached if q not in target and not arena.is_absorbing(q)]

    def moves(q: str) -> list[str]:
        allowed = [strategy[q]] if game.side_of[q] == side else arena.choices
        return [arena.transition[(q, c)] for c in allowed]

    return not has_cycle(live, moves)


def _avoids(game: WinLoseGame, side: str, strategy: PositionalProfile,
            from_state: str, avoid: frozenset[str]) -> bool:
    reached = _constrained_reach(game, side, strategy, from_state, frozenset())
    return not (reached & avoid)


def verify_winning(game: WinLoseGame, side: str, strategy: PositionalProfile,
                   from_state: str) -> bool:
    """Check that every play from ``from_state`` consistent with the
    strategy wins for ``side``; decided on the constrained finite graph."""
    arena = game.arena
    for q in arena.non_absorbing:
        if game.side_of[q] == side and q not in strategy:
            raise ValueError(f"strategy for side {side} missing a choice at {q}")
    objective = game.objective
    if side == "A":
        if isinstance(objective, Reach):
            return _forces_reach(game, side, strategy, from_state, objective.target)
        return _avoids(game, side, strategy, from_state, _bad_states(arena, objective))
    if isinstance(objective, Reach):
        return _avoids(game, side, strategy, from_state, objective.target)
    return _forces_reach(game, side, strategy, from_state, _bad_states(arena, objective))


def complement_objective(arena: Arena, objective: Objective) -> Objective:
    """Objective satisfied exactly by the plays the given one rejects."""
    if isinstance(objective, Reach):
        return Safe(objective.target)
    if isinstance(objective, Safe):
        return Reach(objective.avoid)
    return Reach(_all_absorbing(arena) - objective.target)


def swap_sides(game: WinLoseGame) -> WinLoseGame:
    """Relabel the sides and complement the objective; winners flip."""
    side_of = {q: opponent(s) for q, s in game.side_of.items()}
    return WinLoseGame(game.arena, side_of,
                       complement_objective(game.arena, game.objective))
