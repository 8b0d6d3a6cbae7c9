"""Deterministic instance generators used by the test corpus.

The fixed part is every complete depth-2 binary tree arena over at most
two agents and three outcomes (outcome labels canonicalised by first
occurrence), crossed with every acyclic preference pair.  The seeded part
produces random lasso arenas and random win-lose games of bounded size.
"""

import itertools
import random
from collections.abc import Iterator

from .arena import Arena
from .preferences import PreferenceProfile, check_strictly_well_founded
from .winlose import Objective, Reach, ReachOrNonAbsorbing, Safe, WinLoseGame

TREE_CHOICES = ("L", "R")


def acyclic_relations(outcomes: tuple[str, ...]) -> list[frozenset[tuple[str, str]]]:
    """All acyclic strict relations over the given outcomes."""
    pairs = [(a, b) for a in outcomes for b in outcomes if a != b]
    found = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        relation = frozenset(p for p, keep in zip(pairs, bits) if keep)
        probe = PreferenceProfile(outcomes, {"probe": relation})
        if check_strictly_well_founded(probe, "probe") is None:
            found.append(relation)
    return found


def _leaf_labellings(leaves: int, max_outcomes: int) -> Iterator[tuple[int, ...]]:
    """Assignments of outcome indices to leaves, canonical up to relabelling:
    index k+1 appears only after index k has appeared."""

    def extend(prefix: tuple[int, ...], used: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == leaves:
            yield prefix
            return
        for nxt in range(min(used + 1, max_outcomes)):
            yield from extend(prefix + (nxt,), max(used, nxt + 1))

    yield from extend((), 0)


def depth2_tree_corpus() -> Iterator[tuple[Arena, PreferenceProfile]]:
    """Every depth-2 complete binary tree with <=2 agents, <=3 outcomes
    (canonical labels), and every acyclic preference combination."""
    relation_cache = {m: acyclic_relations(tuple(f"o{i + 1}" for i in range(m)))
                      for m in (1, 2, 3)}
    owner_patterns = [("a", "a", "a"), ("a", "a", "b"), ("a", "b", "a"), ("a", "b", "b")]
    for owners in owner_patterns:
        agents = tuple(sorted(set(owners), key=owners.index))
        for labelling in _leaf_labellings(leaves=4, max_outcomes=3):
            m = max(labelling) + 1
            outcomes = tuple(f"o{i + 1}" for i in range(m))
            arena = Arena(
                choices=TREE_CHOICES,
                agents=agents,
                states=("n0", "n1", "n2", "z0", "z1", "z2", "z3"),
                initial="n0",
                owner={"n0": owners[0], "n1": owners[1], "n2": owners[2]},
                transition={
                    ("n0", "L"): "n1", ("n0", "R"): "n2",
                    ("n1", "L"): "z0", ("n1", "R"): "z1",
                    ("n2", "L"): "z2", ("n2", "R"): "z3",
                },
                absorbing_outcome={f"z{i}": outcomes[labelling[i]] for i in range(4)},
                default_outcome=outcomes[0],
            )
            for combo in itertools.product(relation_cache[m], repeat=len(agents)):
                prefs = PreferenceProfile(outcomes, dict(zip(agents, combo)))
                yield arena, prefs


def random_acyclic_relation(rng: random.Random, outcomes: tuple[str, ...],
                            density: float = 0.5) -> frozenset[tuple[str, str]]:
    """Random relation guaranteed acyclic: edges only follow one shuffle."""
    order = list(outcomes)
    rng.shuffle(order)
    relation = set()
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if rng.random() < density:
                relation.add((order[i], order[j]))
    return frozenset(relation)


def random_prefs(rng: random.Random, outcomes: tuple[str, ...],
                 agents: tuple[str, ...]) -> PreferenceProfile:
    return PreferenceProfile(
        outcomes, {a: random_acyclic_relation(rng, outcomes) for a in agents})


def random_arena(rng: random.Random, *, max_live: int = 4, max_sinks: int = 2,
                 num_outcomes: int | None = None,
                 agents: tuple[str, ...] = ("a", "b")) -> tuple[Arena, PreferenceProfile]:
    """Random lasso arena (at most max_live + max_sinks states) with random
    acyclic preferences."""
    live = [f"q{i}" for i in range(rng.randint(1, max_live))]
    sinks = [f"Z{i}" for i in range(rng.randint(1, max_sinks))]
    if num_outcomes is None:
        num_outcomes = rng.randint(2, 3)
    outcomes = tuple(f"o{i + 1}" for i in range(num_outcomes))
    states = live + sinks
    arena = Arena(
        choices=("L", "R"),
        agents=agents,
        states=tuple(states),
        initial=live[0],
        owner={q: rng.choice(agents) for q in live},
        transition={(q, c): rng.choice(states) for q in live for c in ("L", "R")},
        absorbing_outcome={z: rng.choice(outcomes) for z in sinks},
        default_outcome=rng.choice(outcomes),
    )
    return arena, random_prefs(rng, outcomes, agents)


def random_winlose(rng: random.Random, index: int, *, max_states: int = 10) -> WinLoseGame:
    """Random win-lose game; the objective shape rotates with the index so
    all three appear."""
    total = rng.randint(2, max_states)
    sink_count = rng.randint(0, min(3, total - 1))
    live = [f"q{i}" for i in range(total - sink_count)]
    sinks = [f"Z{i}" for i in range(sink_count)]
    states = live + sinks
    arena = Arena(
        choices=("L", "R"),
        agents=("A", "B"),
        states=tuple(states),
        initial=live[0],
        owner={q: rng.choice(("A", "B")) for q in live},
        transition={(q, c): rng.choice(states) for q in live for c in ("L", "R")},
        absorbing_outcome={z: f"w{i}" for i, z in enumerate(sinks)},
        default_outcome="w_default",
    )
    chosen = frozenset(z for z in sinks if rng.random() < 0.5)
    shape = index % 3
    objective: Objective
    if shape == 0:
        objective = Reach(chosen)
    elif shape == 1:
        objective = Safe(chosen)
    else:
        objective = ReachOrNonAbsorbing(chosen)
    return WinLoseGame(arena, dict(arena.owner), objective)
