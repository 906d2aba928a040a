from __future__ import annotations

import numpy as np
import pytest

from cooklevin.cnf import CnfFormula
from cooklevin.fleet import bundled
from cooklevin.machine import parse_machine

FIXTURE_TM = """\
alphabet: _ 1        # first symbol is the blank
states: q0 q1
initial: q0
accept: q1
delta: q0 1 -> q1 1 R
delta: q0 _ -> q0 _ S
delta: q1 1 -> q1 1 S
"""


@pytest.fixture
def fixture_machine():
    return parse_machine(FIXTURE_TM, name="fixture")


@pytest.fixture
def verifier():
    return bundled("verifier")


def all_models(f: CnfFormula) -> np.ndarray:
    """Every satisfying assignment, one row per model, by plain enumeration.

    Row ``k`` column ``v - 1`` is the value of variable ``v``.  Independent of
    the package's solvers; practical up to about 20 variables.
    """
    n = f.num_vars
    ks = np.arange(1 << n, dtype=np.int64)
    bits = ((ks[:, None] >> np.arange(n)) & 1).astype(bool)
    ok = np.ones(len(ks), dtype=bool)
    for clause in f.clauses:
        sat = np.zeros(len(ks), dtype=bool)
        for lit in clause:
            col = bits[:, abs(lit) - 1]
            sat |= col if lit > 0 else ~col
        ok &= sat
    return bits[ok]


# acceptance criteria report one line each at the end of the run
_CRITERIA: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    def record(number: int, name: str, passed: bool, detail: str = "") -> None:
        _CRITERIA[number] = (name, passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        name, passed, detail = _CRITERIA[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {name}: {detail}")
