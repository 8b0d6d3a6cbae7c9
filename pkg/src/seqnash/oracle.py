"""Ground truth by exhaustion: positional equilibrium enumeration and the
cyclic-preference family that admits no equilibrium at all."""

import itertools

from .arena import Arena, PositionalProfile
from .equilibrium import verify_nash
from .preferences import PreferenceProfile


class BudgetExceeded(Exception):
    """The arena is too large for exhaustive enumeration."""


def brute_force_nash(arena: Arena, prefs: PreferenceProfile, *,
                     max_states: int = 8,
                     max_profiles: int = 1 << 20) -> list[PositionalProfile]:
    """Every positional profile that no single agent can improve upon,
    in declared-order enumeration.  Stability is still judged against
    arbitrary (not just positional) deviations."""
    live = arena.non_absorbing
    if len(live) > max_states:
        raise BudgetExceeded(f"{len(live)} non-absorbing states exceed {max_states}")
    if len(arena.choices) ** len(live) > max_profiles:
        raise BudgetExceeded("profile space exceeds the enumeration budget")
    equilibria = []
    for combo in itertools.product(arena.choices, repeat=len(live)):
        profile = dict(zip(live, combo))
        if verify_nash(arena, prefs, profile) is None:
            equilibria.append(profile)
    return equilibria


def counterexample_game(k: int) -> tuple[Arena, PreferenceProfile]:
    """One agent, one state, k absorbing moves, and a k-cycle preference:
    every profile is improved upon by the cyclically next one, so no
    equilibrium exists and the preference check must reject."""
    if k < 2:
        raise ValueError("need k >= 2")
    choices = tuple(f"c{i}" for i in range(k))
    outcomes = tuple(f"o{i}" for i in range(k))
    sinks = tuple(f"Z{i}" for i in range(k))
    arena = Arena(
        choices=choices,
        agents=("a",),
        states=("hub",) + sinks,
        initial="hub",
        owner={"hub": "a"},
        transition={("hub", f"c{i}"): f"Z{i}" for i in range(k)},
        absorbing_outcome={f"Z{i}": f"o{i}" for i in range(k)},
        default_outcome="o0",
    )
    relation = frozenset((outcomes[i], outcomes[(i + 1) % k]) for i in range(k))
    prefs = PreferenceProfile(outcomes=outcomes, relation_of={"a": relation})
    return arena, prefs
