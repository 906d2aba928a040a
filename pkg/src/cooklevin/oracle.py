"""A one-query oracle machine: reduce acceptance to a formula question, ask once, halt.

The "oracle" here is ordinary computation (the DPLL solver); reports label
it as simulated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cnf import dnf_is_tautology, emit_dnf, negate_to_dnf, parse_dimacs, parse_dnf
from .encoder import Full, encode, encode_dimacs
from .machine import MachineSpec
from .sat import dpll

YES_STATE = "yes-state"
NO_STATE = "no-state"


@dataclass(frozen=True)
class OraclePredicate:
    name: str
    test: Callable[[str], bool]

    def __call__(self, query: str) -> bool:
        return self.test(query)


def _cnf_sat(query: str) -> bool:
    return dpll(parse_dimacs(query)).sat


def _dnf_tautology(query: str) -> bool:
    return dnf_is_tautology(parse_dnf(query))


CNF_SAT = OraclePredicate("cnf-sat", _cnf_sat)
DNF_TAUTOLOGY = OraclePredicate("dnf-tautology", _dnf_tautology)
ORACLES = {o.name: o for o in (CNF_SAT, DNF_TAUTOLOGY)}


@dataclass(frozen=True)
class QueryTranscript:
    machine: str
    input: str
    input_len: int
    T: int
    oracle: str
    queries: tuple[tuple[str, bool], ...]
    work_before: int
    work_after: int
    final: str
    num_vars: int
    num_rows: int


def reduce_and_query(m: MachineSpec, w, T: int, oracle: OraclePredicate | str = CNF_SAT) -> QueryTranscript:
    """Write the encoding of ``(m, w, T)`` on the query tape and consult ``oracle`` once.

    With ``cnf-sat`` the query is the CNF and a yes answer leads to the yes
    state.  With ``dnf-tautology`` the query is its De Morgan negation and a
    *no* answer leads to the yes state, since the negation is a tautology
    exactly when the input is not accepted.
    """
    if isinstance(oracle, str):
        if oracle not in ORACLES:
            raise ValueError(f"unknown oracle {oracle!r}; choose from {sorted(ORACLES)}")
        oracle = ORACLES[oracle]
    if oracle.name == "cnf-sat":
        query = encode_dimacs(m, w, T, Full())
        f = parse_dimacs(query)
        num_vars, num_rows = f.num_vars, len(f)
    elif oracle.name == "dnf-tautology":
        f = encode(m, w, T, Full())
        d = negate_to_dnf(f)
        query = emit_dnf(d, [f"negated encoding of machine {m.name}", f"input {m.render(m.word(w))}", f"steps {T}"])
        num_vars, num_rows = d.num_vars, len(d)
    else:
        raise ValueError(f"oracle {oracle.name!r} has no query construction")
    answer = oracle(query)
    accepted = answer if oracle.name == "cnf-sat" else not answer
    word = m.word(w)
    return QueryTranscript(
        machine=m.name,
        input=m.render(word),
        input_len=len(word),
        T=T,
        oracle=oracle.name,
        queries=((query, answer),),
        # one step per query-tape symbol written, one for the final transition
        work_before=len(query.encode()),
        work_after=1,
        final=YES_STATE if accepted else NO_STATE,
        num_vars=num_vars,
        num_rows=num_rows,
    )


def transcript_report(t: QueryTranscript) -> str:
    query, answer = t.queries[-1]
    size = len(query.encode())
    rows = "clauses" if t.oracle == "cnf-sat" else "terms"
    lines = [
        f"machine: {t.machine}",
        f"input: {t.input!r} (|w|={t.input_len})",
        f"step bound T: {t.T}",
        f"query tape: {size} bytes, {t.num_vars} vars, {t.num_rows} {rows}",
        f"bookkeeping: bytes/T^3 = {size / t.T**3:.2f}, bytes/(|w|+1) = {size / (t.input_len + 1):.2f}",
        f"work: {t.work_before} steps before query, {t.work_after} after",
        f"oracle (simulated): {t.oracle}",
        f"queries: {len(t.queries)}",
        f"answer: {'yes' if answer else 'no'}",
        f"final: {t.final}",
    ]
    return "\n".join(lines) + "\n"
