"""Satisfiability: an exhaustive enumerator and a DPLL solver.

Both solvers are deterministic.  The enumerator is the reference oracle for
small formulas; DPLL (unit propagation over two watched literals, chronological
backtracking, lowest-id variable first, false before true) is the practical path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .cnf import CnfFormula
from .errors import ProjectionTooLarge, TooManyVariables

BRUTE_FORCE_LIMIT = 24
PROJECTION_LIMIT = 20


@dataclass(frozen=True)
class SatStats:
    decisions: int = 0
    propagations: int = 0
    visited: int = 0


@dataclass(frozen=True)
class SatResult:
    sat: bool
    model: dict[int, bool] | None = field(default=None, hash=False)
    stats: SatStats = SatStats()

    @property
    def verdict(self) -> str:
        return "SAT" if self.sat else "UNSAT"


def brute_force_sat(f: CnfFormula) -> SatResult:
    """Try assignments in lexicographic order and return the first model.

    The order treats variable 1 as the least significant bit and false as 0.
    A block of assignments is skipped as soon as a fully assigned clause is
    false, which cannot change which model comes first.  ``stats.visited``
    counts the assignments passed over in that order, skipped ones included.
    """
    n = f.num_vars
    if n > BRUTE_FORCE_LIMIT:
        raise TooManyVariables(f"brute force is capped at {BRUTE_FORCE_LIMIT} variables, formula has {n}")
    if any(not clause for clause in f.clauses):
        return SatResult(False, None, SatStats(visited=1 << n))

    # a clause is checkable once its lowest variable is assigned
    by_low: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for clause in f.clauses:
        by_low[min(abs(lit) for lit in clause)].append(clause)

    value = [False] * (n + 1)
    visited = 0

    def holds(clause: tuple[int, ...]) -> bool:
        for lit in clause:
            if value[lit] if lit > 0 else not value[-lit]:
                return True
        return False

    def search(v: int) -> bool:
        nonlocal visited
        if v == 0:
            visited += 1
            return True
        for val in (False, True):
            value[v] = val
            if all(holds(c) for c in by_low[v]):
                if search(v - 1):
                    return True
            else:
                visited += 1 << (v - 1)
        return False

    if search(n):
        model = {v: value[v] for v in range(1, n + 1)}
        return SatResult(True, model, SatStats(visited=visited))
    return SatResult(False, None, SatStats(visited=visited))


def dpll(f: CnfFormula) -> SatResult:
    n = f.num_vars
    value = [0] * (n + 1)  # 0 unassigned, 1 true, -1 false
    trail: list[int] = []
    # decision stack entries: [trail length before the decision, variable, flipped]
    stack: list[list[int]] = []
    decisions = propagations = 0

    clauses = [list(c) for c in f.clauses]
    watches: dict[int, list[int]] = {}
    units: list[int] = []
    for ci, clause in enumerate(clauses):
        if not clause:
            return SatResult(False, None, SatStats())
        if len(clause) == 1:
            units.append(clause[0])
        else:
            watches.setdefault(clause[0], []).append(ci)
            watches.setdefault(clause[1], []).append(ci)

    def lit_value(lit: int) -> int:
        v = value[abs(lit)]
        return v if lit > 0 else -v

    def assign(lit: int) -> None:
        value[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)

    def propagate(head: int) -> tuple[bool, int]:
        """Unit-propagate from trail position ``head``; False on conflict."""
        nonlocal propagations
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            watching = watches.get(false_lit)
            if not watching:
                continue
            keep = []
            conflict = False
            i = 0
            while i < len(watching):
                ci = watching[i]
                i += 1
                clause = clauses[ci]
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                other = clause[0]
                if lit_value(other) == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(clause)):
                    if lit_value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        watches.setdefault(clause[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if lit_value(other) == -1:
                        conflict = True
                        keep.extend(watching[i:])
                        break
                    assign(other)
                    propagations += 1
            watches[false_lit] = keep
            if conflict:
                return False, head
        return True, head

    def undo(to: int) -> None:
        while len(trail) > to:
            value[abs(trail.pop())] = 0

    ok = True
    for lit in units:
        if lit_value(lit) == -1:
            ok = False
            break
        if lit_value(lit) == 0:
            assign(lit)
            propagations += 1
    head = 0
    if ok:
        ok, head = propagate(0)

    next_var = 1
    while True:
        if not ok:
            # chronological backtrack to the latest unflipped decision
            while stack and stack[-1][2]:
                stack.pop()
            if not stack:
                return SatResult(False, None, SatStats(decisions, propagations))
            entry = stack[-1]
            undo(entry[0])
            entry[2] = 1
            next_var = min(next_var, entry[1])
            decisions += 1
            assign(entry[1])
            ok, head = propagate(entry[0])
            continue
        while next_var <= n and value[next_var] != 0:
            next_var += 1
        if next_var > n:
            model = {v: value[v] == 1 for v in range(1, n + 1)}
            return SatResult(True, model, SatStats(decisions, propagations))
        decisions += 1
        stack.append([len(trail), next_var, 0])
        assign(-next_var)
        ok, head = propagate(len(trail) - 1)


def all_models_projected(
    f: CnfFormula, proj: Iterable[int], solver=dpll
) -> set[frozenset[tuple[int, bool]]]:
    """Distinct restrictions of the models of ``f`` to the variables ``proj``.

    Each restriction is a frozenset of ``(var, value)`` pairs.  After every
    model a clause blocking its restriction is added and the solver rerun.
    """
    proj = sorted(set(proj))
    if len(proj) > PROJECTION_LIMIT:
        raise ProjectionTooLarge(f"projection has {len(proj)} variables, limit is {PROJECTION_LIMIT}")
    for v in proj:
        if not 1 <= v <= f.num_vars:
            raise ValueError(f"projection variable {v} outside 1..{f.num_vars}")
    found: set[frozenset[tuple[int, bool]]] = set()
    clauses = list(f.clauses)
    while True:
        result = solver(CnfFormula(f.num_vars, clauses))
        if not result.sat:
            return found
        restriction = frozenset((v, result.model[v]) for v in proj)
        found.add(restriction)
        clauses.append(tuple(-v if result.model[v] else v for v in proj))
        if not proj:
            return found
