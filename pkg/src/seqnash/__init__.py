"""Nash equilibrium synthesis for multi-agent sequential games on finite
arenas, backed by constructive win-lose determinacy."""

from .arena import (Arena, Lasso, PositionalProfile, bounded_plays,
                    induced_play, possible_outcomes, validate_arena)
from .preferences import (LinearPreference, PreferenceNotWellFounded,
                          PreferenceProfile, TerminalInterval,
                          check_strictly_well_founded, linear_extension, rank,
                          upward_closure)
from .winlose import (Objective, Reach, ReachOrNonAbsorbing, Safe, Verdict,
                      WinLoseGame, attractor, solve, verify_winning)
from .guarantees import (GuaranteeContext, GuaranteeResult, best_guarantee,
                         guarantee, threshold_game)
from .equilibrium import (EquilibriumMachine, JournaledProfile, JournalEntry,
                          RefinementBudgetExceeded, ThreatFailure, TraceStep,
                          assemble, deepen, journaled_guarantee,
                          solve_equilibrium, threat, verify_nash)
from .alternation import Alternated, iota_prefix, pull_back, stretch
from .oracle import BudgetExceeded, brute_force_nash, counterexample_game

__all__ = [
    "Arena", "Lasso", "PositionalProfile", "bounded_plays", "induced_play",
    "possible_outcomes", "validate_arena",
    "LinearPreference", "PreferenceNotWellFounded", "PreferenceProfile",
    "TerminalInterval", "check_strictly_well_founded", "linear_extension",
    "rank", "upward_closure",
    "Objective", "Reach", "ReachOrNonAbsorbing", "Safe", "Verdict",
    "WinLoseGame", "attractor", "solve", "verify_winning",
    "GuaranteeContext", "GuaranteeResult", "best_guarantee", "guarantee",
    "threshold_game",
    "EquilibriumMachine", "JournaledProfile", "JournalEntry",
    "RefinementBudgetExceeded", "ThreatFailure", "TraceStep", "assemble",
    "deepen", "journaled_guarantee", "solve_equilibrium", "threat",
    "verify_nash",
    "Alternated", "iota_prefix", "pull_back", "stretch",
    "BudgetExceeded", "brute_force_nash", "counterexample_game",
]
