"""Single-tape Turing machines on a bounded tape.

Tape squares and steps are numbered from 1, states from 0 (``q0`` is the
initial state) and symbols from 0, where symbol 0 is the blank.  A machine
with several rules for the same ``(state, symbol)`` pair is nondeterministic.
Moving off either end of the bounded tape leaves the head where it is.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadMoveLetter,
    DuplicateSection,
    LayoutOverflow,
    MachineSpecError,
    MissingSection,
    NotDeterministic,
    UnknownState,
    UnknownSymbol,
)

MOVES = {"L": -1, "R": 1, "S": 0}


@dataclass(frozen=True)
class TransitionRule:
    from_state: int
    read: int
    to_state: int
    write: int
    move: str

    @property
    def offset(self) -> int:
        return MOVES[self.move]


@dataclass(frozen=True)
class MachineSpec:
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    accept: frozenset[int]
    rules: tuple[TransitionRule, ...]
    name: str = "machine"

    def __post_init__(self):
        if not self.alphabet:
            raise MachineSpecError("alphabet is empty")
        if not self.states:
            raise MachineSpecError("state list is empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise MachineSpecError("alphabet repeats a symbol")
        if len(set(self.states)) != len(self.states):
            raise MachineSpecError("state list repeats a state")
        for a in self.accept:
            if not 0 <= a < self.r:
                raise UnknownState(f"accept state index {a} out of range")
        for rule in self.rules:
            for q in (rule.from_state, rule.to_state):
                if not 0 <= q < self.r:
                    raise UnknownState(f"state index {q} out of range in {rule}")
            for j in (rule.read, rule.write):
                if not 0 <= j < self.l:
                    raise UnknownSymbol(f"symbol index {j} out of range in {rule}")
            if rule.move not in MOVES:
                raise BadMoveLetter(f"bad move {rule.move!r} in {rule}")

    initial = 0
    blank = 0

    @property
    def l(self) -> int:
        return len(self.alphabet)

    @property
    def r(self) -> int:
        return len(self.states)

    def rules_for(self, state: int, symbol: int) -> list[TransitionRule]:
        return [rule for rule in self.rules if rule.from_state == state and rule.read == symbol]

    def is_deterministic(self) -> bool:
        seen = set()
        for rule in self.rules:
            key = (rule.from_state, rule.read)
            if key in seen:
                return False
            seen.add(key)
        return True

    def word(self, w: str | Sequence[int] | Sequence[str]) -> tuple[int, ...]:
        """Convert ``w`` to a tuple of symbol indices.

        A plain string is split into characters when every symbol name is a
        single character, otherwise on whitespace.
        """
        if isinstance(w, str):
            if all(len(sym) == 1 for sym in self.alphabet):
                tokens: Sequence = list(w)
            else:
                tokens = w.split()
        else:
            tokens = w
        index = {sym: i for i, sym in enumerate(self.alphabet)}
        out = []
        for tok in tokens:
            if isinstance(tok, int):
                if not 0 <= tok < self.l:
                    raise UnknownSymbol(f"symbol index {tok} out of range")
                out.append(tok)
            elif tok in index:
                out.append(index[tok])
            else:
                raise UnknownSymbol(f"unknown symbol {tok!r} in input")
        return tuple(out)

    def render(self, symbols: Iterable[int]) -> str:
        sep = "" if all(len(sym) == 1 for sym in self.alphabet) else " "
        return sep.join(self.alphabet[j] for j in symbols)


@dataclass(frozen=True)
class Configuration:
    tape: tuple[int, ...]
    head: int
    state: int
    step: int

    def __post_init__(self):
        T = len(self.tape)
        if not 1 <= self.head <= T:
            raise ValueError(f"head {self.head} outside squares 1..{T}")
        if not 1 <= self.step <= T:
            raise ValueError(f"step {self.step} outside 1..{T}")

    @property
    def scanned(self) -> int:
        return self.tape[self.head - 1]


@dataclass(frozen=True)
class Trace:
    configs: tuple[Configuration, ...]

    def __len__(self) -> int:
        return len(self.configs)

    @property
    def last(self) -> Configuration:
        return self.configs[-1]


@dataclass(frozen=True)
class RunOutcome:
    accepted: bool
    step: int | None = None
    witness: Trace | None = field(default=None, compare=False)

    @property
    def verdict(self) -> str:
        return f"ACCEPT({self.step})" if self.accepted else "NO-ACCEPT"


def format_config(m: MachineSpec, c: Configuration) -> str:
    return f"t={c.step} state={m.states[c.state]} head={c.head} tape={m.render(c.tape)}"


# --- parsing -----------------------------------------------------------------

_SINGLE_SECTIONS = ("alphabet", "states", "initial", "accept")


def parse_machine(text: str, name: str = "machine") -> MachineSpec:
    """Parse a line-oriented machine document.

    Sections are ``alphabet:``, ``states:``, ``initial:``, ``accept:`` (each
    exactly once) and any number of ``delta: p a -> q b M`` lines.  ``#``
    starts a comment.  The first alphabet token is the blank.  The initial
    state is renumbered to index 0 if it is not listed first.
    """
    sections: dict[str, tuple[int, list[str]]] = {}
    deltas: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise MachineSpecError(f"expected 'section: ...', got {line!r}", lineno)
        tokens = rest.split()
        if key == "delta":
            deltas.append((lineno, tokens))
        elif key in _SINGLE_SECTIONS:
            if key in sections:
                raise DuplicateSection(f"section {key!r} repeated", lineno)
            sections[key] = (lineno, tokens)
        else:
            raise MachineSpecError(f"unknown section {key!r}", lineno)

    for key in _SINGLE_SECTIONS:
        if key not in sections:
            raise MissingSection(f"missing section {key!r}")

    alphabet = sections["alphabet"][1]
    states = sections["states"][1]
    if not alphabet:
        raise MachineSpecError("alphabet is empty", sections["alphabet"][0])
    if not states:
        raise MachineSpecError("state list is empty", sections["states"][0])
    for key, names in (("alphabet", alphabet), ("states", states)):
        if len(set(names)) != len(names):
            raise MachineSpecError(f"{key} repeats a name", sections[key][0])

    init_line, init_tokens = sections["initial"]
    if len(init_tokens) != 1:
        raise MachineSpecError("initial takes exactly one state", init_line)
    if init_tokens[0] not in states:
        raise UnknownState(f"unknown state {init_tokens[0]!r}", init_line)
    states = [init_tokens[0]] + [q for q in states if q != init_tokens[0]]
    state_index = {q: i for i, q in enumerate(states)}
    symbol_index = {a: i for i, a in enumerate(alphabet)}

    def state_of(tok: str, lineno: int) -> int:
        if tok not in state_index:
            raise UnknownState(f"unknown state {tok!r}", lineno)
        return state_index[tok]

    def symbol_of(tok: str, lineno: int) -> int:
        if tok not in symbol_index:
            raise UnknownSymbol(f"unknown symbol {tok!r}", lineno)
        return symbol_index[tok]

    acc_line, acc_tokens = sections["accept"]
    accept = frozenset(state_of(tok, acc_line) for tok in acc_tokens)

    rules = []
    for lineno, tokens in deltas:
        if len(tokens) != 6 or tokens[2] != "->":
            raise MachineSpecError("delta must read 'p a -> q b M'", lineno)
        p, a, _, q, b, move = tokens
        if move not in MOVES:
            raise BadMoveLetter(f"move must be one of L, R, S, got {move!r}", lineno)
        rules.append(
            TransitionRule(
                state_of(p, lineno), symbol_of(a, lineno), state_of(q, lineno), symbol_of(b, lineno), move
            )
        )
    return MachineSpec(tuple(alphabet), tuple(states), accept, tuple(rules), name)


def format_machine(m: MachineSpec) -> str:
    lines = [
        f"alphabet: {' '.join(m.alphabet)}",
        f"states: {' '.join(m.states)}",
        f"initial: {m.states[0]}",
        f"accept: {' '.join(m.states[a] for a in sorted(m.accept))}",
    ]
    for rule in m.rules:
        lines.append(
            f"delta: {m.states[rule.from_state]} {m.alphabet[rule.read]} -> "
            f"{m.states[rule.to_state]} {m.alphabet[rule.write]} {rule.move}"
        )
    return "\n".join(lines) + "\n"


# --- semantics ---------------------------------------------------------------


def normalize_machine(m: MachineSpec) -> MachineSpec:
    """Give every accept state a stay-in-place self-loop on each symbol it lacks a rule for."""
    defined = {(rule.from_state, rule.read) for rule in m.rules}
    extra = [
        TransitionRule(a, j, a, j, "S")
        for a in sorted(m.accept)
        for j in range(m.l)
        if (a, j) not in defined
    ]
    if not extra:
        return m
    return MachineSpec(m.alphabet, m.states, m.accept, m.rules + tuple(extra), m.name)


def clamp(square: int, T: int) -> int:
    return min(max(square, 1), T)


def apply_rule(c: Configuration, rule: TransitionRule) -> Configuration:
    T = len(c.tape)
    tape = list(c.tape)
    tape[c.head - 1] = rule.write
    return Configuration(tuple(tape), clamp(c.head + rule.offset, T), rule.to_state, c.step + 1)


def successors(m: MachineSpec, c: Configuration) -> list[Configuration]:
    """Successor configurations of ``c``, one per applicable rule in declaration order."""
    if c.step >= len(c.tape):
        raise ValueError("configuration is already at the step bound")
    return [apply_rule(c, rule) for rule in m.rules_for(c.state, c.scanned)]


def initial_config(tape: Sequence[int], T: int) -> Configuration:
    if len(tape) > T:
        raise LayoutOverflow(f"{len(tape)} tape squares needed but T={T}")
    return Configuration(tuple(tape) + (0,) * (T - len(tape)), 1, 0, 1)


def is_valid_trace(m: MachineSpec, trace: Trace) -> bool:
    """True if ``trace`` starts in q0 at square 1, step 1 and every step follows a rule."""
    if not trace.configs:
        return False
    first = trace.configs[0]
    if (first.state, first.head, first.step) != (0, 1, 1):
        return False
    for prev, nxt in zip(trace.configs, trace.configs[1:]):
        if prev.step >= len(prev.tape) or nxt not in successors(m, prev):
            return False
    return True


def _require_deterministic(m: MachineSpec) -> None:
    if not m.is_deterministic():
        counts: dict[tuple[int, int], int] = defaultdict(int)
        for rule in m.rules:
            counts[rule.from_state, rule.read] += 1
        (q, j) = next(key for key, n in counts.items() if n > 1)
        raise NotDeterministic(
            f"{m.name} has {counts[q, j]} rules for ({m.states[q]}, {m.alphabet[j]})"
        )


def _run_from(m: MachineSpec, start: Configuration) -> RunOutcome:
    T = len(start.tape)
    configs = [start]
    c = start
    while True:
        if c.state in m.accept:
            return RunOutcome(True, c.step, Trace(tuple(configs)))
        if c.step == T:
            return RunOutcome(False)
        nxt = successors(m, c)
        if not nxt:
            return RunOutcome(False)
        c = nxt[0]
        configs.append(c)


def run_deterministic(m: MachineSpec, w, T: int) -> RunOutcome:
    _require_deterministic(m)
    return _run_from(m, initial_config(m.word(w), T))


def accepts_nondet(m: MachineSpec, w, T: int) -> RunOutcome:
    """Breadth-first search for an accepting computation of at most ``T`` steps.

    Rules are expanded in declaration order and the first accepting
    configuration found is reported, so the witness is reproducible.
    """
    start = initial_config(m.word(w), T)
    parent: dict[Configuration, Configuration | None] = {start: None}
    level = [start]
    while level:
        for c in level:
            if c.state in m.accept:
                path = []
                node: Configuration | None = c
                while node is not None:
                    path.append(node)
                    node = parent[node]
                return RunOutcome(True, c.step, Trace(tuple(reversed(path))))
        if level[0].step == T:
            break
        nxt_level = []
        for c in level:
            for s in successors(m, c):
                if s not in parent:
                    parent[s] = c
                    nxt_level.append(s)
        level = nxt_level
    return RunOutcome(False)


def certificate_tape(m: MachineSpec, w, cert, T: int) -> tuple[int, ...]:
    """Input, one blank separator, then the certificate."""
    w_sym, c_sym = m.word(w), m.word(cert)
    tape = w_sym + (m.blank,) + c_sym
    if len(tape) > T:
        raise LayoutOverflow(
            f"|w| + 1 + |cert| = {len(tape)} exceeds T={T}"
        )
    return tape


def guess_and_check(m: MachineSpec, w, cert, T: int) -> RunOutcome:
    """Two-stage run: the certificate is already written, then ``m`` checks it deterministically."""
    _require_deterministic(m)
    return _run_from(m, initial_config(certificate_tape(m, w, cert, T), T))


def enumerate_certificates(m: MachineSpec, w, cert_len: int, T: int) -> list[str]:
    """All certificates of length ``cert_len`` that ``m`` accepts, in alphabet order."""
    _require_deterministic(m)
    n = len(m.word(w))
    if n + 1 + cert_len > T:
        raise LayoutOverflow(f"|w| + 1 + cert_len = {n + 1 + cert_len} exceeds T={T}")
    return [
        m.render(cert)
        for cert in itertools.product(range(m.l), repeat=cert_len)
        if guess_and_check(m, w, cert, T).accepted
    ]
