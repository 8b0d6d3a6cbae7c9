import itertools
import random

import pytest

from seqnash.alternation import (FATAL_LOSE, FATAL_WIN, iota_prefix, pull_back,
                                 stretch)
from seqnash.arena import Arena
from seqnash.corpus import random_winlose
from seqnash.winlose import Reach, WinLoseGame, solve, verify_winning

CHOICES = ("x", "y")


def make_predicate(members):
    table = {tuple(m) for m in members}
    return lambda gamma: tuple(gamma) in table


def random_predicate(rng, max_len=9):
    """Random side-A membership over all short histories; the empty history
    always belongs to side A."""
    members = {()}
    for length in range(1, max_len + 1):
        for word in itertools.product(CHOICES, repeat=length):
            if rng.random() < 0.5:
                members.add(word)
    return make_predicate(members)


def all_words(max_len, alphabet=CHOICES):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


class TestInsertionFunction:
    def setup_method(self):
        self.side_a = make_predicate([(), ("x",)])

    def test_empty(self):
        assert iota_prefix(self.side_a, (), "x") == ()

    def test_same_mover_inserts_dummy(self):
        assert iota_prefix(self.side_a, ("x",), "x") == ("x", "x")

    def test_no_insertion_after_mover_change(self):
        assert iota_prefix(self.side_a, ("x", "y"), "x") == ("x", "x", "y")

    def test_mover_change_from_the_start(self):
        assert iota_prefix(self.side_a, ("y",), "x") == ("y",)

    def test_injective_on_short_words(self):
        rng = random.Random(7)
        for _ in range(50):
            side_a = random_predicate(rng, max_len=6)
            images = [iota_prefix(side_a, w, "x") for w in all_words(6)]
            assert len(set(images)) == len(images)

    def test_prefix_monotone(self):
        rng = random.Random(9)
        for _ in range(50):
            side_a = random_predicate(rng, max_len=6)
            for word in all_words(5):
                image = iota_prefix(side_a, word, "x")
                for c in CHOICES:
                    longer = iota_prefix(side_a, word + (c,), "x")
                    assert longer[:len(image)] == image

    def test_alternation_parity(self):
        # A history belongs to side A exactly when its image has even
        # length, i.e. image positions owned by A are the even ones.
        rng = random.Random(11)
        for _ in range(50):
            side_a = random_predicate(rng, max_len=6)
            for word in all_words(6):
                image = iota_prefix(side_a, word, "x")
                assert side_a(word) == (len(image) % 2 == 0)

    def test_cylinder_prefixes(self):
        # Depth-k prefixes of the image of a ball equal those of the ball
        # around the image intersected with the whole image.
        rng = random.Random(13)
        for _ in range(12):
            side_a = random_predicate(rng, max_len=9)
            for gamma in all_words(3):
                base = iota_prefix(side_a, gamma, "x")
                for k in range(1, 7):
                    lhs = {iota_prefix(side_a, gamma + tail, "x")[:k]
                           for tail in itertools.product(CHOICES, repeat=k)}
                    head = base[:k]
                    rhs = {iota_prefix(side_a, word, "x")[:k]
                           for word in itertools.product(CHOICES, repeat=k + 3)}
                    rhs = {w for w in rhs if w[:len(head)] == head}
                    assert lhs == rhs


def alternating_game():
    arena = Arena(
        choices=("0", "1"),
        agents=("A", "B"),
        states=("r", "t", "Z0", "Z1"),
        initial="r",
        owner={"r": "A", "t": "B"},
        transition={("r", "0"): "t", ("r", "1"): "Z1",
                    ("t", "0"): "Z0", ("t", "1"): "Z1"},
        absorbing_outcome={"Z0": "z0", "Z1": "z1"},
        default_outcome="z0",
    )
    return WinLoseGame(arena, {"r": "A", "t": "B"}, Reach(frozenset({"Z1"})))


def g_one_game():
    arena = Arena(
        choices=("0", "1"),
        agents=("A", "B"),
        states=("q0", "WIN"),
        initial="q0",
        owner={"q0": "A"},
        transition={("q0", "0"): "q0", ("q0", "1"): "WIN"},
        absorbing_outcome={"WIN": "w"},
        default_outcome="l",
    )
    return WinLoseGame(arena, {"q0": "A"}, Reach(frozenset({"WIN"})))


class TestStretch:
    def test_already_alternating_is_isomorphic(self):
        game = alternating_game()
        alternated = stretch(game)
        assert alternated.stretched.arena == game.arena
        assert alternated.stretched.objective == game.objective
        assert alternated.fatal_a == frozenset()
        assert alternated.fatal_b == frozenset()
        assert not alternated.swapped

    def test_g_one_gains_a_dummy(self):
        game = g_one_game()
        alternated = stretch(game)
        stretched = alternated.stretched
        assert stretched.side_of == {"q0": "A", "q0@dummy": "B"}
        tr = stretched.arena.transition
        assert tr[("q0", "0")] == "q0@dummy"
        assert tr[("q0", "1")] == "WIN"
        assert tr[("q0@dummy", "0")] == "q0"
        assert tr[("q0@dummy", "1")] == FATAL_WIN
        assert alternated.fatal_a == frozenset({FATAL_WIN})
        assert alternated.fatal_b == frozenset()
        assert stretched.objective == Reach(frozenset({"WIN", FATAL_WIN}))
        verdict = solve(stretched)
        assert verdict.winner_at["q0"] == "A"
        assert verdict.winner_at["q0@dummy"] == "A"

    def test_unknown_dummy_choice(self):
        with pytest.raises(ValueError):
            stretch(g_one_game(), "2")

    def test_strict_alternation_along_every_edge(self):
        rng = random.Random(17)
        for i in range(50):
            game = random_winlose(rng, i, max_states=6)
            stretched = stretch(game).stretched
            arena = stretched.arena
            for q in arena.non_absorbing:
                for c in arena.choices:
                    target = arena.transition[(q, c)]
                    if not arena.is_absorbing(target):
                        assert stretched.side_of[q] != stretched.side_of[target]

    def test_winner_preserved_at_the_initial_state(self):
        rng = random.Random(19)
        for i in range(50):
            game = random_winlose(rng, i, max_states=6)
            alternated = stretch(game)
            original = solve(game).winner_at[game.arena.initial]
            lifted = solve(alternated.stretched).winner_at[game.arena.initial]
            assert alternated.to_original_side(lifted) == original


class TestPullBack:
    def test_identity_on_alternating_games(self):
        game = alternating_game()
        alternated = stretch(game)
        verdict = solve(alternated.stretched)
        winner = verdict.winner_at[game.arena.initial]
        pulled = pull_back(alternated, verdict.strategy(winner), winner)
        assert pulled == {q: verdict.strategy(winner)[q] for q in pulled}
        assert verify_winning(game, winner, pulled, game.arena.initial)

    def test_g_one_projects_to_the_winning_move(self):
        game = g_one_game()
        alternated = stretch(game)
        verdict = solve(alternated.stretched)
        pulled = pull_back(alternated, verdict.strategy("A"), "A")
        assert pulled == {"q0": "1"}

    def test_seeded_random_games(self):
        rng = random.Random(23)
        for i in range(50):
            game = random_winlose(rng, i, max_states=6)
            alternated = stretch(game)
            verdict = solve(alternated.stretched)
            winner = verdict.winner_at[alternated.stretched.arena.initial]
            pulled = pull_back(alternated, verdict.strategy(winner), winner)
            original_side = alternated.to_original_side(winner)
            assert verify_winning(game, original_side, pulled, game.arena.initial)
