"""Command-line surface.

Exit codes: 0 success, 1 parse/validation errors (and failed verification),
2 cyclic preferences, 3 internal invariant violations.  Output is line
oriented and deterministic: identical inputs give byte-identical output.
"""

import argparse
import sys
from pathlib import Path

from .alternation import stretch
from .arena import Arena, validate_arena
from .equilibrium import (RefinementBudgetExceeded, ThreatFailure, deepen,
                          assemble, verify_nash)
from .gamefile import (ParseError, format_certificate, format_winlose,
                       parse_certificate, parse_game, parse_profile, parse_winlose)
from .guarantees import GuaranteeContext
from .oracle import BudgetExceeded, brute_force_nash
from .preferences import (PreferenceNotWellFounded, PreferenceProfile,
                          check_strictly_well_founded, linear_extension)
from .winlose import solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CYCLIC = 2
EXIT_INTERNAL = 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_game(path: str) -> tuple[Arena, PreferenceProfile]:
    arena, prefs = parse_game(_read(path), source=path)
    problems = [p for p in validate_arena(arena, prefs) if not p.startswith("warning:")]
    if problems:
        raise ParseError(path, 0, "; ".join(problems))
    return arena, prefs


def cmd_check_prefs(args: argparse.Namespace) -> int:
    _, prefs = _load_game(args.game)
    all_ok = True
    for agent in prefs.relation_of:
        cycle = check_strictly_well_founded(prefs, agent)
        if cycle is None:
            print(f"{agent}: ok")
        else:
            print(f"{agent}: cycle {' '.join(cycle)}")
            all_ok = False
    return EXIT_OK if all_ok else EXIT_CYCLIC


def cmd_solve(args: argparse.Namespace) -> int:
    arena, prefs = _load_game(args.game)
    linears = {a: linear_extension(prefs, a) for a in arena.agents}
    seed = None
    if args.seed_profile:
        seed = parse_profile(_read(args.seed_profile), arena, source=args.seed_profile)
    sigma, play, trace = deepen(arena, linears, seed)
    machine = assemble(arena, linears, sigma, play)
    if args.trace:
        for step in trace:
            print(f"# step position={step.position} state={step.state} "
                  f"agent={step.agent} guarantee={step.guarantee.minimum} "
                  f"best={step.best.minimum} refined={'yes' if step.refined else 'no'}")
    sys.stdout.write(format_certificate(arena, machine))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    arena, prefs = _load_game(args.game)
    machine = parse_certificate(_read(args.certificate), arena, source=args.certificate)
    witness = verify_nash(arena, prefs, machine)
    if witness is None:
        print("ok")
        return EXIT_OK
    agent, outcome = witness
    base = machine.induced_play(arena).outcome
    print(f"unstable: agent {agent} prefers achievable {outcome} over {base}")
    return EXIT_INPUT


def cmd_best_guarantee(args: argparse.Namespace) -> int:
    arena, prefs = _load_game(args.game)
    agents = [args.agent] if args.agent else list(arena.agents)
    for agent in agents:
        if agent not in arena.agents:
            raise ParseError(args.game, 0, f"unknown agent {agent}")
    states = [args.state] if args.state else list(arena.states)
    for state in states:
        if state not in arena.states:
            raise ParseError(args.game, 0, f"unknown state {state}")
    linears = {a: linear_extension(prefs, a) for a in arena.agents}
    ctx = GuaranteeContext(arena, linears)
    order = {q: i for i, q in enumerate(arena.states)}
    for agent in agents:
        for state in states:
            result = ctx.best_guarantee(agent, state)
            witness = " ".join(f"{q}={c}" for q, c in
                               sorted(result.witness.items(), key=lambda kv: order[kv[0]]))
            line = f"{agent} {state} {result.interval.minimum}"
            print(line + (f" {witness}" if witness else ""))
    return EXIT_OK


def cmd_winlose(args: argparse.Namespace) -> int:
    game = parse_winlose(_read(args.game), source=args.game)
    verdict = solve(game)
    arena = game.arena
    for q in arena.states:
        print(f"winner {q} {verdict.winner_at[q]}")
    for side in ("A", "B"):
        strategy = verdict.strategy(side)
        for q in arena.states:
            if q in strategy:
                print(f"strategy {side} {q} {strategy[q]}")
    return EXIT_OK


def cmd_alternate(args: argparse.Namespace) -> int:
    game = parse_winlose(_read(args.game), source=args.game)
    alternated = stretch(game, args.c0)
    sys.stdout.write(format_winlose(alternated.stretched))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    arena, prefs = _load_game(args.game)
    for profile in brute_force_nash(arena, prefs):
        print(" ".join(f"{q} {profile[q]}" for q in arena.non_absorbing))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqnash",
        description="Construct and verify Nash equilibria for sequential games "
                    "on finite arenas.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-prefs", help="report per-agent preference cycles")
    p.add_argument("game")
    p.set_defaults(func=cmd_check_prefs)

    p = sub.add_parser("solve", help="compute an equilibrium certificate")
    p.add_argument("game")
    p.add_argument("--seed-profile", metavar="FILE")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate for stability")
    p.add_argument("game")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("best-guarantee", help="securable outcomes per agent and state")
    p.add_argument("game")
    p.add_argument("--agent")
    p.add_argument("--state")
    p.set_defaults(func=cmd_best_guarantee)

    p = sub.add_parser("winlose", help="solve a two-sided win-lose game")
    p.add_argument("game")
    p.set_defaults(func=cmd_winlose)

    p = sub.add_parser("alternate", help="emit the strictly alternating transform")
    p.add_argument("game")
    p.add_argument("--c0", metavar="CHOICE")
    p.set_defaults(func=cmd_alternate)

    p = sub.add_parser("oracle", help="enumerate all positional equilibria")
    p.add_argument("game")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as error:
        print(error, file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as error:
        print(error, file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as error:
        print(f"budget exceeded: {error}", file=sys.stderr)
        return EXIT_INPUT
    except PreferenceNotWellFounded as error:
        print(error, file=sys.stderr)
        return EXIT_CYCLIC
    except (ThreatFailure, RefinementBudgetExceeded) as error:
        print(f"internal invariant violation: {error}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())
