import random

import pytest

from seqnash.corpus import random_winlose
from seqnash.winlose import (Reach, Safe, WinLoseGame, attractor, solve,
                             verify_winning)

from helpers import exhaustive_winner, make_g_one, make_g_threat


def g_one_game(objective=None):
    arena, _ = make_g_one()
    return WinLoseGame(arena, {"q0": "A"}, objective or Reach(frozenset({"WIN"})))


def g_threat_game(side_of, objective):
    arena, _ = make_g_threat()
    return WinLoseGame(arena, side_of, objective)


class TestAttractor:
    def test_one_side_owns_everything(self):
        game = g_threat_game({"r": "A", "t": "A"}, Reach(frozenset({"O2"})))
        attr, strategy = attractor(game, "A", {"O2"})
        assert attr == {"O2", "t", "r"}
        assert strategy == {"r": "R", "t": "R"}

    def test_opponent_escapes(self):
        game = g_threat_game({"r": "A", "t": "B"}, Reach(frozenset({"O2"})))
        attr, strategy = attractor(game, "A", {"O2"})
        assert attr == {"O2"}
        assert strategy == {}

    def test_empty_target(self):
        game = g_one_game()
        assert attractor(game, "A", frozenset()) == (frozenset(), {})

    def test_monotone_in_target(self):
        rng = random.Random(3)
        for i in range(60):
            game = random_winlose(rng, i, max_states=8)
            sinks = [q for q in game.arena.states if game.arena.is_absorbing(q)]
            small = frozenset(q for q in sinks if rng.random() < 0.4)
            extra = frozenset(q for q in sinks if rng.random() < 0.4)
            small_attr, _ = attractor(game, "A", small)
            big_attr, _ = attractor(game, "A", small | extra)
            assert small_attr <= big_attr


class TestSolve:
    def test_g_one_reach(self):
        verdict = solve(g_one_game())
        assert verdict.winner_at == {"q0": "A", "WIN": "A"}
        assert verdict.strategy_a == {"q0": "1"}

    def test_safe_nothing(self):
        verdict = solve(g_one_game(Safe(frozenset())))
        assert set(verdict.winner_at.values()) == {"A"}

    def test_g_threat_punisher_wins(self):
        verdict = solve(g_threat_game({"r": "A", "t": "B"}, Reach(frozenset({"O2"}))))
        assert verdict.winner_at["r"] == "B"
        assert verdict.winner_at["t"] == "B"
        assert verdict.strategy_b["t"] == "L"


class TestVerifyWinning:
    def test_winning_choice(self):
        assert verify_winning(g_one_game(), "A", {"q0": "1"}, "q0")

    def test_looping_forever_fails_reach(self):
        assert not verify_winning(g_one_game(), "A", {"q0": "0"}, "q0")

    def test_coalition_blocks_reach(self):
        game = g_threat_game({"r": "A", "t": "B"}, Reach(frozenset({"O2"})))
        assert verify_winning(game, "B", {"t": "L"}, "r")

    def test_partial_strategy_rejected(self):
        with pytest.raises(ValueError):
            verify_winning(g_one_game(), "A", {}, "q0")


class TestDeterminacy:
    def test_unique_winner_with_verified_strategies(self):
        rng = random.Random(5)
        for i in range(80):
            game = random_winlose(rng, i)
            verdict = solve(game)
            for q in game.arena.states:
                side = verdict.winner_at[q]
                assert side in ("A", "B")
                assert verify_winning(game, side, verdict.strategy(side), q)

    def test_matches_exhaustive_enumeration(self):
        rng = random.Random(6)
        checked = 0
        for i in range(120):
            game = random_winlose(rng, i, max_states=6)
            verdict = solve(game)
            for q in game.arena.states:
                assert verdict.winner_at[q] == exhaustive_winner(game, q)
                checked += 1
        assert checked > 100

    def test_complement_duality(self):
        # A's safety region is the complement of B's attractor to the bad set.
        rng = random.Random(8)
        for i in range(40):
            game = random_winlose(rng, i, max_states=8)
            sinks = [q for q in game.arena.states if game.arena.is_absorbing(q)]
            bad = frozenset(q for q in sinks if rng.random() < 0.5)
            safety = WinLoseGame(game.arena, game.side_of, Safe(bad))
            verdict = solve(safety)
            attr, _ = attractor(safety, "B", bad)
            for q in game.arena.states:
                assert (verdict.winner_at[q] == "A") == (q not in attr)
