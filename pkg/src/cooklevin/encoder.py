"""Compile a bounded Turing-machine computation into a CNF formula.

The formula is the conjunction of eight clause groups, emitted in the order
B, C, D, E, F, G, H, I:

* B: exactly one scanned square per step
* C: exactly one symbol per square per step
* D: exactly one state per step
* E: the initial configuration (unit clauses)
* F: written symbol of the scanned square, plus frame axioms for the rest
* G: next state
* H: head movement
* I: some step is in an accept state

Variables are numbered by :class:`VarLayout`: first the scanned-square block
``S[s,t]``, then the state block ``Q[i,t]``, then the symbol block ``P[j,s,t]``
and, in general fidelity, one rule-selector ``K[c,t]`` per rule and step.

``"literal"`` fidelity writes the update clauses as implications from
``(state, scanned square, scanned symbol)`` straight to the effect of the one
rule for that pair, which only makes sense for a deterministic machine.
``"general"`` fidelity routes every step through an exactly-one choice of
rule, so that the next state, the written symbol and the move all come from
the same rule of a nondeterministic machine.

A configuration with no applicable rule is forbidden unless an accept state
has already been reached at the same or an earlier step; after acceptance the
rest of the tableau is unconstrained by the transition rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .cnf import CnfFormula, emit_dimacs
from .errors import LayoutOverflow, MalformedModel, NotDeterministic
from .machine import Configuration, MachineSpec, Trace, clamp, normalize_machine

GROUPS = ("B", "C", "D", "E", "F", "G", "H", "I")
FIDELITIES = ("literal", "general")


@dataclass(frozen=True)
class Full:
    """The input is written on squares 1..n and every other square is blank."""


@dataclass(frozen=True)
class CertificateFree:
    """Only the start state and head position are fixed, plus optional pins.

    With ``cert_len`` set, squares ``1..pin_len`` hold the input, square
    ``pin_len + 1`` is a blank separator, the next ``cert_len`` squares are
    left free and the rest are blank.  With ``cert_len=None`` every square is
    free and only the start state and head position are asserted.
    """

    pin_len: int = 0
    cert_len: int | None = None

    def cert_squares(self, T: int) -> range:
        if self.cert_len is None:
            return range(1, T + 1)
        start = self.pin_len + 2
        return range(start, start + self.cert_len)


Mode = Full | CertificateFree


@dataclass(frozen=True)
class VarLayout:
    T: int
    l: int
    r: int
    b: int = 0

    def s_id(self, s: int, t: int) -> int:
        return (t - 1) * self.T + s

    def q_id(self, i: int, t: int) -> int:
        return self.T**2 + (t - 1) * self.r + (i + 1)

    def p_id(self, j: int, s: int, t: int) -> int:
        """Symbol variable; ``j`` is the 1-based symbol number (1 is blank)."""
        return self.T**2 + self.r * self.T + ((t - 1) * self.T + (s - 1)) * self.l + j

    def k_id(self, c: int, t: int) -> int:
        """Selector for 1-based rule number ``c`` at step ``t`` in 1..T-1."""
        return self.T**2 + self.r * self.T + self.l * self.T**2 + (t - 1) * self.b + c

    @property
    def num_vars(self) -> int:
        return self.T**2 + self.r * self.T + self.l * self.T**2 + self.b * (self.T - 1)

    def describe(self, var: int) -> str:
        """Human-readable name of ``var``, e.g. ``S[2,1]`` or ``P[1,3,2]``."""
        T, r, l = self.T, self.r, self.l
        if 1 <= var <= T * T:
            t, s = divmod(var - 1, T)
            return f"S[{s + 1},{t + 1}]"
        var -= T * T
        if var <= r * T:
            t, i = divmod(var - 1, r)
            return f"Q[{i},{t + 1}]"
        var -= r * T
        if var <= l * T * T:
            cell, j = divmod(var - 1, l)
            t, s = divmod(cell, T)
            return f"P[{j + 1},{s + 1},{t + 1}]"
        var -= l * T * T
        if self.b and var <= self.b * (T - 1):
            t, c = divmod(var - 1, self.b)
            return f"K[{c + 1},{t + 1}]"
        raise ValueError("variable outside the layout")


def layout_for(m: MachineSpec, T: int, fidelity: str = "general") -> VarLayout:
    _check_fidelity(fidelity)
    return VarLayout(T, m.l, m.r, len(m.rules) if fidelity == "general" else 0)


def _check_fidelity(fidelity: str) -> None:
    if fidelity not in FIDELITIES:
        raise ValueError(f"fidelity must be one of {FIDELITIES}, got {fidelity!r}")


def _exactly_one(variables: list[int]) -> list[tuple[int, ...]]:
    return [tuple(variables)] + [(-a, -b) for a, b in combinations(variables, 2)]


# --- clause groups -----------------------------------------------------------


def encode_B(lay: VarLayout) -> list[tuple[int, ...]]:
    out = []
    for t in range(1, lay.T + 1):
        out += _exactly_one([lay.s_id(s, t) for s in range(1, lay.T + 1)])
    return out


def encode_C(lay: VarLayout) -> list[tuple[int, ...]]:
    out = []
    for t in range(1, lay.T + 1):
        for s in range(1, lay.T + 1):
            out += _exactly_one([lay.p_id(j, s, t) for j in range(1, lay.l + 1)])
    return out


def encode_D(lay: VarLayout) -> list[tuple[int, ...]]:
    out = []
    for t in range(1, lay.T + 1):
        out += _exactly_one([lay.q_id(i, t) for i in range(lay.r)])
    return out


def encode_E(m: MachineSpec, w, lay: VarLayout, mode: Mode) -> list[tuple[int, ...]]:
    T = lay.T
    word = m.word(w)
    out = [(lay.q_id(0, 1),), (lay.s_id(1, 1),)]
    if isinstance(mode, Full):
        if len(word) > T:
            raise LayoutOverflow(f"|w| = {len(word)} exceeds T={T}")
        tape = word + (m.blank,) * (T - len(word))
        out += [(lay.p_id(tape[s - 1] + 1, s, 1),) for s in range(1, T + 1)]
        return out
    if mode.cert_len is None:
        if mode.pin_len:
            raise ValueError("pin_len requires cert_len")
        return out
    if mode.pin_len + 1 + mode.cert_len > T:
        raise LayoutOverflow(
            f"pin_len + 1 + cert_len = {mode.pin_len + 1 + mode.cert_len} exceeds T={T}"
        )
    if len(word) != mode.pin_len:
        raise ValueError(f"pin_len={mode.pin_len} but the input has {len(word)} symbols")
    pinned = {s: word[s - 1] for s in range(1, mode.pin_len + 1)}
    pinned[mode.pin_len + 1] = m.blank
    for s in range(mode.pin_len + mode.cert_len + 2, T + 1):
        pinned[s] = m.blank
    out += [(lay.p_id(pinned[s] + 1, s, 1),) for s in sorted(pinned)]
    return out


def _require_literal_ok(m: MachineSpec, fidelity: str) -> None:
    if fidelity == "literal" and not m.is_deterministic():
        raise NotDeterministic(
            f"literal fidelity needs a deterministic machine, {m.name} is not"
        )


def _accepted_by(m: MachineSpec, lay: VarLayout, t: int) -> list[int]:
    return [lay.q_id(a, u) for u in range(1, t + 1) for a in sorted(m.accept)]


def encode_F(m: MachineSpec, lay: VarLayout, fidelity: str) -> list[tuple[int, ...]]:
    _check_fidelity(fidelity)
    _require_literal_ok(m, fidelity)
    T = lay.T
    out = []
    for t in range(1, T):
        for c, rule in enumerate(m.rules, start=1):
            for s in range(1, T + 1):
                if fidelity == "literal":
                    guard = (-lay.q_id(rule.from_state, t), -lay.s_id(s, t), -lay.p_id(rule.read + 1, s, t))
                else:
                    guard = (-lay.k_id(c, t), -lay.s_id(s, t))
                out.append(guard + (lay.p_id(rule.write + 1, s, t + 1),))
    for t in range(1, T):
        for s in range(1, T + 1):
            for j in range(1, lay.l + 1):
                out.append((lay.s_id(s, t), -lay.p_id(j, s, t), lay.p_id(j, s, t + 1)))
    return out


def encode_G(m: MachineSpec, lay: VarLayout, fidelity: str) -> list[tuple[int, ...]]:
    _check_fidelity(fidelity)
    _require_literal_ok(m, fidelity)
    T = lay.T
    out = []
    pairs = [(i, j) for i in range(m.r) for j in range(m.l)]
    for t in range(1, T):
        if fidelity == "literal":
            for rule in m.rules:
                for s in range(1, T + 1):
                    out.append(
                        (
                            -lay.q_id(rule.from_state, t),
                            -lay.s_id(s, t),
                            -lay.p_id(rule.read + 1, s, t),
                            lay.q_id(rule.to_state, t + 1),
                        )
                    )
            excuse = tuple(_accepted_by(m, lay, t))
            for i, j in pairs:
                if m.rules_for(i, j):
                    continue
                for s in range(1, T + 1):
                    out.append((-lay.q_id(i, t), -lay.s_id(s, t), -lay.p_id(j + 1, s, t)) + excuse)
        else:
            selectors = [lay.k_id(c, t) for c in range(1, len(m.rules) + 1)]
            for c, rule in enumerate(m.rules, start=1):
                out.append((-lay.k_id(c, t), lay.q_id(rule.to_state, t + 1)))
            excuse = tuple(_accepted_by(m, lay, t))
            for i, j in pairs:
                choices = tuple(
                    lay.k_id(c, t)
                    for c, rule in enumerate(m.rules, start=1)
                    if (rule.from_state, rule.read) == (i, j)
                )
                tail = choices if choices else excuse
                for s in range(1, T + 1):
                    out.append((-lay.q_id(i, t), -lay.s_id(s, t), -lay.p_id(j + 1, s, t)) + tail)
            out += _exactly_one(selectors)
    return out


def encode_H(m: MachineSpec, lay: VarLayout, fidelity: str) -> list[tuple[int, ...]]:
    _check_fidelity(fidelity)
    _require_literal_ok(m, fidelity)
    T = lay.T
    out = []
    for t in range(1, T):
        for c, rule in enumerate(m.rules, start=1):
            for s in range(1, T + 1):
                target = lay.s_id(clamp(s + rule.offset, T), t + 1)
                if fidelity == "literal":
                    guard = (-lay.q_id(rule.from_state, t), -lay.s_id(s, t), -lay.p_id(rule.read + 1, s, t))
                else:
                    guard = (-lay.k_id(c, t), -lay.s_id(s, t))
                out.append(guard + (target,))
    return out


def encode_I(m: MachineSpec, lay: VarLayout) -> list[tuple[int, ...]]:
    return [tuple(_accepted_by(m, lay, lay.T))]


# --- whole formula -----------------------------------------------------------


def encode_groups(m: MachineSpec, w, T: int, mode: Mode = Full(), fidelity: str = "general"):
    """Clause groups of the formula as an ordered ``{name: clauses}`` dict, plus the layout."""
    if T < 1:
        raise ValueError("T must be at least 1")
    _check_fidelity(fidelity)
    m = normalize_machine(m)
    _require_literal_ok(m, fidelity)
    lay = layout_for(m, T, fidelity)
    groups = {
        "B": encode_B(lay),
        "C": encode_C(lay),
        "D": encode_D(lay),
        "E": encode_E(m, w, lay, mode),
        "F": encode_F(m, lay, fidelity),
        "G": encode_G(m, lay, fidelity),
        "H": encode_H(m, lay, fidelity),
        "I": encode_I(m, lay),
    }
    return groups, lay


def encode(m: MachineSpec, w, T: int, mode: Mode = Full(), fidelity: str = "general") -> CnfFormula:
    """CNF that is satisfiable iff ``m`` has an accepting run of at most ``T`` steps.

    In :class:`CertificateFree` mode the free squares range over every
    possible certificate instead.
    """
    groups, lay = encode_groups(m, w, T, mode, fidelity)
    return CnfFormula(lay.num_vars, [clause for name in GROUPS for clause in groups[name]])


def mode_label(mode: Mode) -> str:
    if isinstance(mode, Full):
        return "full"
    if mode.cert_len is None:
        return "cert-free free-tape"
    return f"cert-free pin_len={mode.pin_len} cert_len={mode.cert_len}"


def encode_dimacs(m: MachineSpec, w, T: int, mode: Mode = Full(), fidelity: str = "general") -> str:
    """DIMACS text of :func:`encode` with a comment header describing the encoding."""
    groups, lay = encode_groups(m, w, T, mode, fidelity)
    f = CnfFormula(lay.num_vars, [clause for name in GROUPS for clause in groups[name]])
    comments = [
        f"machine {m.name}",
        f"input {m.render(m.word(w))}",
        f"steps {T}",
        f"mode {mode_label(mode)}",
        f"fidelity {fidelity}",
    ]
    comments += [f"group {name} clauses={len(groups[name])}" for name in GROUPS]
    return emit_dimacs(f, comments)


# --- decoding ----------------------------------------------------------------


def _the_one(model: Mapping[int, bool], ids: Iterable[int], what: str) -> int:
    hits = [k for k, var in enumerate(ids) if model.get(var, False)]
    if len(hits) != 1:
        raise MalformedModel(f"{len(hits)} true variables for {what}")
    return hits[0]


def decode_tableau(m: MachineSpec, T: int, model: Mapping[int, bool], fidelity: str = "general") -> list[Configuration]:
    """All ``T`` rows of the tableau described by ``model``."""
    m = normalize_machine(m)
    lay = layout_for(m, T, fidelity)
    rows = []
    for t in range(1, T + 1):
        head = 1 + _the_one(model, [lay.s_id(s, t) for s in range(1, T + 1)], f"scanned square at t={t}")
        state = _the_one(model, [lay.q_id(i, t) for i in range(m.r)], f"state at t={t}")
        tape = tuple(
            _the_one(model, [lay.p_id(j, s, t) for j in range(1, m.l + 1)], f"symbol at square {s}, t={t}")
            for s in range(1, T + 1)
        )
        rows.append(Configuration(tape, head, state, t))
    if lay.b:
        for t in range(1, T):
            _the_one(model, [lay.k_id(c, t) for c in range(1, lay.b + 1)], f"rule selector at t={t}")
    return rows


def decode_model(m: MachineSpec, T: int, model: Mapping[int, bool], fidelity: str = "general") -> Trace:
    """The computation encoded by ``model``, cut off at its first accepting step."""
    rows = decode_tableau(m, T, model, fidelity)
    for k, c in enumerate(rows):
        if c.state in m.accept:
            return Trace(tuple(rows[: k + 1]))
    raise MalformedModel("no step of the model is in an accept state")


def certificate_vars(m: MachineSpec, T: int, mode: CertificateFree, fidelity: str = "general") -> list[int]:
    """Step-1 symbol variables of the free certificate squares."""
    lay = layout_for(normalize_machine(m), T, fidelity)
    return [lay.p_id(j, s, 1) for s in mode.cert_squares(T) for j in range(1, m.l + 1)]


def decode_certificate(m: MachineSpec, T: int, mode: CertificateFree, assignment: Mapping[int, bool], fidelity: str = "general") -> tuple[int, ...]:
    lay = layout_for(normalize_machine(m), T, fidelity)
    return tuple(
        _the_one(assignment, [lay.p_id(j, s, 1) for j in range(1, m.l + 1)], f"certificate square {s}")
        for s in mode.cert_squares(T)
    )


# --- sizes -------------------------------------------------------------------


@dataclass(frozen=True)
class SizeReport:
    clauses: dict[str, int]
    literals: dict[str, int]
    num_vars: int

    @property
    def total_clauses(self) -> int:
        return sum(self.clauses.values())

    @property
    def total_literals(self) -> int:
        return sum(self.literals.values())

    def table(self) -> str:
        lines = ["group clauses literals"]
        lines += [f"{g} {self.clauses[g]} {self.literals[g]}" for g in GROUPS]
        lines.append(f"total {self.total_clauses} {self.total_literals}")
        lines.append(f"vars {self.num_vars}")
        return "\n".join(lines) + "\n"


def size_report(m: MachineSpec, w, T: int, mode: Mode = Full(), fidelity: str = "general") -> SizeReport:
    groups, lay = encode_groups(m, w, T, mode, fidelity)
    return SizeReport(
        {g: len(groups[g]) for g in GROUPS},
        {g: sum(len(c) for c in groups[g]) for g in GROUPS},
        lay.num_vars,
    )


def closed_form_counts(l: int, r: int, T: int, b: int = 0, mode: Mode = Full()) -> dict[str, int]:
    """Clause counts of B, C, D, E and I and the variable count, from their formulas.

    ``b`` is the rule count of the normalized machine in general fidelity, 0 in literal.
    """
    if isinstance(mode, Full):
        e = T + 2
    elif mode.cert_len is None:
        e = 2
    else:
        e = T + 2 - mode.cert_len
    return {
        "B": T * (1 + T * (T - 1) // 2),
        "C": T * T * (1 + l * (l - 1) // 2),
        "D": T * (1 + r * (r - 1) // 2),
        "E": e,
        "I": 1,
        "vars": T * T + r * T + l * T * T + b * (T - 1),
    }
