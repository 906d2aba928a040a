"""CNF and DNF formulas over numbered variables.

Literals use the DIMACS convention: variable ``v`` is the literal ``v`` and
its negation is ``-v``.  Clause and term order is preserved exactly; only
repeated identical literals inside one clause are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BadHeader, DimacsError, IncompleteAssignment, LiteralOutOfRange, MissingTerminator

Clause = tuple[int, ...]
Assignment = Mapping[int, bool]


def _normalize(rows: Iterable[Iterable[int]], num_vars: int) -> tuple[Clause, ...]:
    out = []
    for row in rows:
        seen: dict[int, None] = {}
        for lit in row:
            lit = int(lit)
            if lit == 0 or abs(lit) > num_vars:
                raise LiteralOutOfRange(f"literal {lit} outside 1..{num_vars}")
            seen.setdefault(lit, None)
        out.append(tuple(seen))
    return tuple(out)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __init__(self, num_vars: int, clauses: Iterable[Iterable[int]] = ()):
        object.__setattr__(self, "num_vars", int(num_vars))
        object.__setattr__(self, "clauses", _normalize(clauses, int(num_vars)))

    def __len__(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class DnfFormula:
    num_vars: int
    terms: tuple[Clause, ...]

    def __init__(self, num_vars: int, terms: Iterable[Iterable[int]] = ()):
        object.__setattr__(self, "num_vars", int(num_vars))
        object.__setattr__(self, "terms", _normalize(terms, int(num_vars)))

    def __len__(self) -> int:
        return len(self.terms)


def _check_total(num_vars: int, a: Assignment) -> None:
    missing = [v for v in range(1, num_vars + 1) if v not in a]
    if missing:
        raise IncompleteAssignment(f"assignment misses {len(missing)} variable(s), first is {missing[0]}")


def _lit_true(lit: int, a: Assignment) -> bool:
    return a[lit] if lit > 0 else not a[-lit]


def eval_cnf(f: CnfFormula, a: Assignment) -> bool:
    _check_total(f.num_vars, a)
    return all(any(_lit_true(lit, a) for lit in clause) for clause in f.clauses)


def eval_dnf(d: DnfFormula, a: Assignment) -> bool:
    _check_total(d.num_vars, a)
    return any(all(_lit_true(lit, a) for lit in term) for term in d.terms)


def negate_to_dnf(f: CnfFormula) -> DnfFormula:
    """De Morgan: the negation of a CNF is the DNF with every literal flipped."""
    return DnfFormula(f.num_vars, [[-lit for lit in clause] for clause in f.clauses])


def negate_to_cnf(d: DnfFormula) -> CnfFormula:
    return CnfFormula(d.num_vars, [[-lit for lit in term] for term in d.terms])


BRUTE_FORCE_TAUTOLOGY_LIMIT = 20


def _dnf_tautology_by_enumeration(d: DnfFormula) -> bool:
    n = d.num_vars
    chunk = 1 << min(n, 16)
    for start in range(0, 1 << n, chunk):
        ks = np.arange(start, start + chunk, dtype=np.int64)
        covered = np.zeros(chunk, dtype=bool)
        for term in d.terms:
            sat = np.ones(chunk, dtype=bool)
            for lit in term:
                bit = ((ks >> (abs(lit) - 1)) & 1).astype(bool)
                sat &= bit if lit > 0 else ~bit
            covered |= sat
        if not covered.all():
            return False
    return True


def dnf_is_tautology(d: DnfFormula, method: str = "auto") -> bool:
    """True iff every assignment satisfies some term.

    ``method`` is ``"brute"`` (enumerate all assignments), ``"sat"`` (the
    De Morgan dual CNF is unsatisfiable) or ``"auto"``, which enumerates up
    to 20 variables and uses the solver beyond.
    """
    if method == "auto":
        method = "brute" if d.num_vars <= BRUTE_FORCE_TAUTOLOGY_LIMIT else "sat"
    if method == "brute":
        return _dnf_tautology_by_enumeration(d)
    if method == "sat":
        from .sat import dpll

        return not dpll(negate_to_cnf(d)).sat
    raise ValueError(f"unknown method {method!r}")


# --- DIMACS ------------------------------------------------------------------


def _emit(kind: str, num_vars: int, rows: Sequence[Clause], comments: Iterable[str]) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p {kind} {num_vars} {len(rows)}")
    lines.extend(" ".join([*map(str, row), "0"]) for row in rows)
    return "\n".join(lines) + "\n"


def emit_dimacs(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    return _emit("cnf", f.num_vars, f.clauses, comments)


def emit_dnf(d: DnfFormula, comments: Iterable[str] = ()) -> str:
    return _emit("dnf", d.num_vars, d.terms, comments)


def _parse(text: str, kind: str) -> tuple[int, list[list[int]]]:
    header: tuple[int, int] | None = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise BadHeader("second header line", lineno)
            if len(parts) != 4 or parts[1] != kind:
                raise BadHeader(f"expected 'p {kind} <vars> <{'clauses' if kind == 'cnf' else 'terms'}>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise BadHeader("header counts must be integers", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise BadHeader("header counts must be non-negative", lineno)
            continue
        if header is None:
            raise BadHeader("row before header", lineno)
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise DimacsError(f"non-integer token in {line!r}", lineno) from None
        if nums[-1] != 0:
            raise MissingTerminator("row does not end with 0", lineno)
        if 0 in nums[:-1]:
            raise DimacsError("0 inside a row; write one row per line", lineno)
        for lit in nums[:-1]:
            if abs(lit) > header[0]:
                raise LiteralOutOfRange(f"literal {lit} outside 1..{header[0]}", lineno)
        rows.append(nums[:-1])
    if header is None:
        raise BadHeader("missing header line")
    if len(rows) != header[1]:
        raise BadHeader(f"header declares {header[1]} rows, found {len(rows)}")
    return header[0], rows


def parse_dimacs(text: str) -> CnfFormula:
    num_vars, rows = _parse(text, "cnf")
    return CnfFormula(num_vars, rows)


def parse_dnf(text: str) -> DnfFormula:
    num_vars, rows = _parse(text, "dnf")
    return DnfFormula(num_vars, rows)


def dimacs_comments(text: str) -> list[str]:
    """The comment lines of a DIMACS document, without the leading ``c ``."""
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("p"):
            break
        if line.startswith("c"):
            out.append(line[2:] if len(line) > 1 else "")
    return out
