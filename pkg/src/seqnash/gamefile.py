"""Text formats: game descriptions, win-lose games, certificates, profiles.

All formats are line oriented with ``#`` comments and whitespace-separated
tokens.  Parsing is strict: unknown directives and duplicate definitions
are errors, reported with their line number.
"""

from collections.abc import Iterator

from .arena import Arena, Lasso, PositionalProfile
from .equilibrium import EquilibriumMachine
from .preferences import PreferenceProfile
from .winlose import Objective, Reach, ReachOrNonAbsorbing, Safe, WinLoseGame


class ParseError(Exception):
    def __init__(self, source: str, line: int, message: str):
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


class _Collector:
    """Shared directive bookkeeping for the two game formats."""

    def __init__(self, source: str):
        self.source = source
        self.singles: dict[str, tuple[int, list[str]]] = {}
        self.state_lines: list[tuple[int, str, str]] = []      # (line, state, owner/side)
        self.absorbing_lines: list[tuple[int, str, str]] = []  # (line, state, outcome)
        self.transitions: list[tuple[int, str, str, str]] = []
        self.prefers: list[tuple[int, str, str, str]] = []
        self.state_order: list[str] = []
        self._declared: set[str] = set()

    def fail(self, line: int, message: str) -> None:
        raise ParseError(self.source, line, message)

    def single(self, line: int, key: str, tokens: list[str]) -> None:
        if key in self.singles:
            self.fail(line, f"duplicate directive {key}")
        self.singles[key] = (line, tokens)

    def declare_state(self, line: int, state: str) -> None:
        if state in self._declared:
            self.fail(line, f"duplicate definition of state {state}")
        self._declared.add(state)
        self.state_order.append(state)

    def require(self, key: str) -> tuple[int, list[str]]:
        if key not in self.singles:
            self.fail(0, f"missing directive {key}")
        return self.singles[key]

    def unique_tokens(self, key: str) -> tuple[int, list[str]]:
        line, tokens = self.require(key)
        if not tokens:
            self.fail(line, f"{key} needs at least one token")
        if len(set(tokens)) != len(tokens):
            self.fail(line, f"duplicate token in {key}")
        return line, tokens


def _collect(text: str, source: str, owner_directive: str,
             extra: tuple[str, ...]) -> _Collector:
    col = _Collector(source)
    for line, tokens in _lines(text):
        head = tokens[0]
        if head in ("choices:", "outcomes:", "default-outcome:", "initial:") + extra:
            col.single(line, head, tokens[1:])
        elif head == "prefer" and owner_directive == "state":
            if len(tokens) != 5 or not tokens[1].endswith(":") or tokens[3] != "<":
                col.fail(line, "expected: prefer <agent>: <o> < <o'>")
            col.prefers.append((line, tokens[1][:-1], tokens[2], tokens[4]))
        elif head == "state" and owner_directive == "state":
            if len(tokens) != 3 or not tokens[2].startswith("owner="):
                col.fail(line, "expected: state <q> owner=<agent>")
            col.declare_state(line, tokens[1])
            col.state_lines.append((line, tokens[1], tokens[2][len("owner="):]))
        elif head == "side" and owner_directive == "side":
            if len(tokens) != 3 or tokens[2] not in ("A", "B"):
                col.fail(line, "expected: side <q> A|B")
            col.declare_state(line, tokens[1])
            col.state_lines.append((line, tokens[1], tokens[2]))
        elif head == "on":
            if len(tokens) != 5 or tokens[3] != "->":
                col.fail(line, "expected: on <q> <choice> -> <q'>")
            col.transitions.append((line, tokens[1], tokens[2], tokens[4]))
        elif head == "absorbing":
            if len(tokens) != 3 or not tokens[2].startswith("outcome="):
                col.fail(line, "expected: absorbing <q> outcome=<o>")
            col.declare_state(line, tokens[1])
            col.absorbing_lines.append((line, tokens[1], tokens[2][len("outcome="):]))
        else:
            col.fail(line, f"unknown directive: {head}")
    return col


def _assemble_arena(col: _Collector, agents: tuple[str, ...],
                    owner_of: dict[str, str]) -> Arena:
    _, choices = col.unique_tokens("choices:")
    _, outcomes = col.unique_tokens("outcomes:")
    line, default_tokens = col.require("default-outcome:")
    if len(default_tokens) != 1:
        col.fail(line, "default-outcome: takes exactly one outcome")
    default = default_tokens[0]
    if default not in outcomes:
        col.fail(line, f"unknown outcome {default}")
    line, initial_tokens = col.require("initial:")
    if len(initial_tokens) != 1:
        col.fail(line, "initial: takes exactly one state")
    initial = initial_tokens[0]
    states = set(col.state_order)
    if initial not in states:
        col.fail(line, f"unknown state {initial}")
    absorbing: dict[str, str] = {}
    for line, q, o in col.absorbing_lines:
        if o not in outcomes:
            col.fail(line, f"unknown outcome {o}")
        absorbing[q] = o
    transition: dict[tuple[str, str], str] = {}
    for line, q, c, target in col.transitions:
        if q not in states:
            col.fail(line, f"unknown state {q}")
        if target not in states:
            col.fail(line, f"unknown state {target}")
        if c not in choices:
            col.fail(line, f"unknown choice {c}")
        if q in absorbing:
            col.fail(line, f"transition from absorbing state {q}")
        if (q, c) in transition:
            col.fail(line, f"duplicate transition ({q}, {c})")
        transition[(q, c)] = target
    return Arena(
        choices=tuple(choices),
        agents=agents,
        states=tuple(col.state_order),
        initial=initial,
        owner=owner_of,
        transition=transition,
        absorbing_outcome=absorbing,
        default_outcome=default,
    )


def parse_game(text: str, source: str = "<game>") -> tuple[Arena, PreferenceProfile]:
    col = _collect(text, source, "state", extra=("agents:",))
    _, agents = col.unique_tokens("agents:")
    owner_of: dict[str, str] = {}
    for line, q, owner in col.state_lines:
        if owner not in agents:
            col.fail(line, f"unknown agent {owner}")
        owner_of[q] = owner
    arena = _assemble_arena(col, tuple(agents), owner_of)
    _, outcomes = col.unique_tokens("outcomes:")
    relations: dict[str, set[tuple[str, str]]] = {a: set() for a in agents}
    for line, agent, worse, better in col.prefers:
        if agent not in relations:
            col.fail(line, f"unknown agent {agent}")
        if worse not in outcomes or better not in outcomes:
            col.fail(line, "prefer uses an undeclared outcome")
        if (worse, better) in relations[agent]:
            col.fail(line, f"duplicate preference {worse} < {better} for {agent}")
        relations[agent].add((worse, better))
    prefs = PreferenceProfile(tuple(outcomes),
                              {a: frozenset(r) for a, r in relations.items()})
    return arena, prefs


_OBJECTIVE_KEYWORDS = ("reach", "safe", "reach-or-nonabsorbing")


def parse_winlose(text: str, source: str = "<winlose>") -> WinLoseGame:
    col = _collect(text, source, "side", extra=("objective:",))
    side_of: dict[str, str] = {q: side for _, q, side in col.state_lines}
    arena = _assemble_arena(col, ("A", "B"), dict(side_of))
    line, tokens = col.require("objective:")
    if not tokens or tokens[0] not in _OBJECTIVE_KEYWORDS:
        col.fail(line, "expected: objective: reach|safe|reach-or-nonabsorbing <q>...")
    for q in tokens[1:]:
        if q not in arena.states:
            col.fail(line, f"unknown state {q}")
        if not arena.is_absorbing(q):
            col.fail(line, f"objective state {q} is not absorbing")
    chosen = frozenset(tokens[1:])
    objective: Objective
    if tokens[0] == "reach":
        objective = Reach(chosen)
    elif tokens[0] == "safe":
        objective = Safe(chosen)
    else:
        objective = ReachOrNonAbsorbing(chosen)
    return WinLoseGame(arena, side_of, objective)


def format_winlose(game: WinLoseGame) -> str:
    """Win-lose game as parseable text; outcome declaration order is the
    default outcome first, then absorbing outcomes by state order."""
    arena = game.arena
    outcomes = [arena.default_outcome]
    for q in arena.states:
        if arena.is_absorbing(q) and arena.absorbing_outcome[q] not in outcomes:
            outcomes.append(arena.absorbing_outcome[q])
    lines = [
        "choices: " + " ".join(arena.choices),
        "outcomes: " + " ".join(outcomes),
        f"default-outcome: {arena.default_outcome}",
    ]
    for q in arena.states:
        if not arena.is_absorbing(q):
            lines.append(f"side {q} {game.side_of[q]}")
    for q in arena.states:
        if not arena.is_absorbing(q):
            for c in arena.choices:
                lines.append(f"on {q} {c} -> {arena.transition[(q, c)]}")
    for q in arena.states:
        if arena.is_absorbing(q):
            lines.append(f"absorbing {q} outcome={arena.absorbing_outcome[q]}")
    lines.append(f"initial: {arena.initial}")
    objective = game.objective
    if isinstance(objective, Reach):
        keyword, states = "reach", objective.target
    elif isinstance(objective, Safe):
        keyword, states = "safe", objective.avoid
    else:
        keyword, states = "reach-or-nonabsorbing", objective.target
    ordered = sorted(states, key=arena.states.index)
    lines.append(("objective: " + keyword + " " + " ".join(ordered)).rstrip())
    return "\n".join(lines) + "\n"


def _parse_pairs(source: str, line: int, arena: Arena,
                 tokens: list[str], *, allow_absorb: bool) -> tuple[list[tuple[str, str]], str | None]:
    pairs: list[tuple[str, str]] = []
    i = 0
    while i < len(tokens):
        if allow_absorb and tokens[i] == "absorb":
            if i + 2 != len(tokens):
                raise ParseError(source, line, "absorb takes exactly one state")
            terminal = tokens[i + 1]
            if terminal not in arena.states or not arena.is_absorbing(terminal):
                raise ParseError(source, line, f"{terminal} is not an absorbing state")
            return pairs, terminal
        if i + 1 >= len(tokens):
            raise ParseError(source, line, "dangling state without a choice")
        q, c = tokens[i], tokens[i + 1]
        if q not in arena.states or arena.is_absorbing(q):
            raise ParseError(source, line, f"{q} is not a non-absorbing state")
        if c not in arena.choices:
            raise ParseError(source, line, f"unknown choice {c}")
        pairs.append((q, c))
        i += 2
    return pairs, None


def _check_chain(source: str, line: int, arena: Arena, start: str,
                 pairs: list[tuple[str, str]]) -> str:
    current = start
    for q, c in pairs:
        if q != current:
            raise ParseError(source, line, f"play breaks at {q}: expected {current}")
        current = arena.transition[(q, c)]
    return current


def parse_certificate(text: str, arena: Arena,
                      source: str = "<certificate>") -> EquilibriumMachine:
    prefix_spec = cycle_spec = outcome_spec = filler_spec = None
    threat_specs: dict[str, tuple[int, list[str]]] = {}
    for line, tokens in _lines(text):
        head = tokens[0]
        if head == "play-prefix:":
            if prefix_spec is not None:
                raise ParseError(source, line, "duplicate directive play-prefix:")
            prefix_spec = (line, tokens[1:])
        elif head == "play-cycle:":
            if cycle_spec is not None:
                raise ParseError(source, line, "duplicate directive play-cycle:")
            cycle_spec = (line, tokens[1:])
        elif head == "outcome:":
            if outcome_spec is not None:
                raise ParseError(source, line, "duplicate directive outcome:")
            if len(tokens) != 2:
                raise ParseError(source, line, "outcome: takes exactly one outcome")
            outcome_spec = (line, tokens[1])
        elif head == "threat":
            if len(tokens) < 2 or not tokens[1].endswith(":"):
                raise ParseError(source, line, "expected: threat <agent>: <q> <c> ...")
            agent = tokens[1][:-1]
            if agent not in arena.agents:
                raise ParseError(source, line, f"unknown agent {agent}")
            if agent in threat_specs:
                raise ParseError(source, line, f"duplicate threat for agent {agent}")
            threat_specs[agent] = (line, tokens[2:])
        elif head == "filler:":
            if filler_spec is not None:
                raise ParseError(source, line, "duplicate directive filler:")
            filler_spec = (line, tokens[1:])
        else:
            raise ParseError(source, line, f"unknown directive: {head}")
    for name, spec in (("play-prefix:", prefix_spec), ("play-cycle:", cycle_spec),
                       ("outcome:", outcome_spec), ("filler:", filler_spec)):
        if spec is None:
            raise ParseError(source, 0, f"missing directive {name}")

    line, tokens = prefix_spec
    prefix, terminal = _parse_pairs(source, line, arena, tokens, allow_absorb=True)
    after_prefix = _check_chain(source, line, arena, arena.initial, prefix)
    line, tokens = cycle_spec
    cycle, _ = _parse_pairs(source, line, arena, tokens, allow_absorb=False)
    if terminal is not None:
        if cycle:
            raise ParseError(source, line, "absorbed play cannot also cycle")
        if after_prefix != terminal:
            raise ParseError(source, prefix_spec[0],
                             f"prefix ends at {after_prefix}, not {terminal}")
        outcome = arena.absorbing_outcome[terminal]
    else:
        if not cycle:
            raise ParseError(source, line, "play needs either a cycle or an absorb")
        if cycle[0][0] != after_prefix:
            raise ParseError(source, line,
                             f"cycle starts at {cycle[0][0]}, prefix ends at {after_prefix}")
        back = _check_chain(source, line, arena, cycle[0][0], cycle)
        if back != cycle[0][0]:
            raise ParseError(source, line, f"cycle does not close: ends at {back}")
        outcome = arena.default_outcome
    line, declared_outcome = outcome_spec
    if declared_outcome != outcome:
        raise ParseError(source, line,
                         f"outcome {declared_outcome} does not match the play ({outcome})")
    play = Lasso(tuple(prefix), tuple(cycle), terminal, outcome)

    on_path = {arena.owner[q] for q, _ in play.pairs}
    if set(threat_specs) != on_path:
        raise ParseError(source, 0,
                         "threat tables must cover exactly the agents owning play positions")
    threats: dict[str, dict[str, str]] = {}
    for agent, (line, tokens) in threat_specs.items():
        pairs, _ = _parse_pairs(source, line, arena, tokens, allow_absorb=False)
        table = dict(pairs)
        if len(table) != len(pairs):
            raise ParseError(source, line, "duplicate state in threat table")
        needed = {q for q in arena.non_absorbing if arena.owner[q] != agent}
        if set(table) != needed:
            raise ParseError(source, line,
                             f"threat for {agent} must cover exactly the other agents' states")
        threats[agent] = table

    line, tokens = filler_spec
    pairs, _ = _parse_pairs(source, line, arena, tokens, allow_absorb=False)
    fillers = dict(pairs)
    if len(fillers) != len(pairs):
        raise ParseError(source, line, "duplicate state in filler")
    if set(fillers) != set(arena.non_absorbing):
        raise ParseError(source, line, "filler must cover every non-absorbing state")
    return EquilibriumMachine(play=play, threats=threats, fillers=fillers)


def format_certificate(arena: Arena, machine: EquilibriumMachine) -> str:
    def pairs_text(pairs) -> str:
        return " ".join(f"{q} {c}" for q, c in pairs)

    play = machine.play
    prefix_line = "play-prefix:"
    if play.prefix:
        prefix_line += " " + pairs_text(play.prefix)
    if play.terminal is not None:
        prefix_line += f" absorb {play.terminal}"
    cycle_line = "play-cycle:"
    if play.cycle:
        cycle_line += " " + pairs_text(play.cycle)
    lines = [prefix_line, cycle_line, f"outcome: {play.outcome}"]
    order = {q: i for i, q in enumerate(arena.states)}
    for agent in arena.agents:
        if agent not in machine.threats:
            continue
        table = machine.threats[agent]
        entries = pairs_text(sorted(table.items(), key=lambda kv: order[kv[0]]))
        lines.append(f"threat {agent}:" + (f" {entries}" if entries else ""))
    filler = pairs_text(sorted(machine.fillers.items(), key=lambda kv: order[kv[0]]))
    lines.append("filler:" + (f" {filler}" if filler else ""))
    return "\n".join(lines) + "\n"


def parse_profile(text: str, arena: Arena, source: str = "<profile>") -> PositionalProfile:
    """Seed-profile format: one ``<state> <choice>`` pair per line."""
    profile: PositionalProfile = {}
    for line, tokens in _lines(text):
        if len(tokens) != 2:
            raise ParseError(source, line, "expected: <state> <choice>")
        q, c = tokens
        if q not in arena.states or arena.is_absorbing(q):
            raise ParseError(source, line, f"{q} is not a non-absorbing state")
        if c not in arena.choices:
            raise ParseError(source, line, f"unknown choice {c}")
        if q in profile:
            raise ParseError(source, line, f"duplicate choice for state {q}")
        profile[q] = c
    missing = [q for q in arena.non_absorbing if q not in profile]
    if missing:
        raise ParseError(source, 0, f"profile missing choices for: {' '.join(missing)}")
    return profile
