"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line in the summary.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time
from functools import lru_cache

from cooklevin.cnf import CnfFormula, dnf_is_tautology, emit_dimacs, negate_to_dnf, parse_dimacs
from cooklevin.encoder import (
    CertificateFree,
    Full,
    certificate_vars,
    closed_form_counts,
    decode_certificate,
    decode_model,
    encode,
    encode_dimacs,
    size_report,
)
from cooklevin.errors import NotDeterministic
from cooklevin.fleet import bundled, fleet, inputs, verifiers
from cooklevin.machine import accepts_nondet, enumerate_certificates, is_valid_trace, normalize_machine
from cooklevin.oracle import reduce_and_query
from cooklevin.sat import BRUTE_FORCE_LIMIT, all_models_projected, brute_force_sat, dpll

STEPS = range(2, 9)
MAX_INPUT = 4


def fleet_cases():
    for m in fleet():
        for w in inputs(m, MAX_INPUT):
            for T in STEPS:
                if len(m.word(w)) <= T:
                    yield m, w, T


@lru_cache(maxsize=None)
def central_sweep():
    """Solve every Full-mode fleet encoding once; shared by criteria 1, 3 and 9."""
    start = time.perf_counter()
    rows = []
    for m, w, T in fleet_cases():
        f = encode(m, w, T, Full())
        result = dpll(f)
        rows.append((m, w, T, f, result, accepts_nondet(m, w, T)))
    return rows, time.perf_counter() - start


def test_fleet_shape():
    machines = fleet()
    assert len(machines) >= 10
    assert any(m.is_deterministic() for m in machines)
    assert any(not m.is_deterministic() for m in machines)
    assert all(m.r <= 5 and m.l <= 3 for m in machines)


def test_1_central_equivalence(criterion):
    rows, elapsed = central_sweep()
    bad = [(m.name, w, T) for m, w, T, _, r, sim in rows if r.sat != sim.accepted]
    passed = not bad and elapsed < 120
    criterion(1, "central equivalence", passed, f"{len(rows)} cases, {len(bad)} disagreements, {elapsed:.1f}s (limit 120s)")
    assert not bad, bad[:5]
    assert elapsed < 120


def test_2_brute_force_oracle(criterion):
    start = time.perf_counter()
    checked, bad = 0, []
    for m in fleet():
        for w in inputs(m, MAX_INPUT):
            if len(m.word(w)) > 2:
                continue
            for fidelity in ("general", "literal"):
                try:
                    f = encode(m, w, 2, Full(), fidelity)
                except NotDeterministic:
                    continue
                if f.num_vars > BRUTE_FORCE_LIMIT:
                    continue
                checked += 1
                if brute_force_sat(f).sat != dpll(f).sat:
                    bad.append((m.name, w, fidelity))
    elapsed = time.perf_counter() - start
    passed = not bad and checked > 0 and elapsed < 30
    criterion(2, "brute force vs DPLL", passed, f"{checked} encodings <= 24 vars, {len(bad)} disagreements, {elapsed:.2f}s (limit 30s)")
    assert checked > 0 and not bad and elapsed < 30


def test_3_decode_validity(criterion):
    rows, _ = central_sweep()
    sat_rows = [row for row in rows if row[4].sat]
    bad = []
    for m, w, T, _, result, _ in sat_rows:
        trace = decode_model(m, T, result.model)
        first = trace.configs[0]
        ok = (
            is_valid_trace(m, trace)
            and (first.state, first.head, first.step) == (0, 1, 1)
            and first.tape[: len(m.word(w))] == m.word(w)
            and any(c.state in m.accept for c in trace.configs)
        )
        if not ok:
            bad.append((m.name, w, T))
    criterion(3, "decode validity", not bad, f"{len(sat_rows) - len(bad)}/{len(sat_rows)} decoded traces valid")
    assert sat_rows and not bad


def test_4_certificate_free(criterion):
    start = time.perf_counter()
    checked, bad = 0, []
    for m in verifiers():
        for w in inputs(m, 2):
            n = len(m.word(w))
            for cert_len in (1, 2):
                for T in range(n + 1 + cert_len, 9):
                    mode = CertificateFree(pin_len=n, cert_len=cert_len)
                    f = encode(m, w, T, mode)
                    projected = all_models_projected(f, certificate_vars(m, T, mode))
                    via_sat = {m.render(decode_certificate(m, T, mode, dict(p))) for p in projected}
                    truth = set(enumerate_certificates(m, w, cert_len, T))
                    checked += 1
                    if via_sat ^ truth:
                        bad.append((m.name, w, cert_len, T, via_sat ^ truth))
    elapsed = time.perf_counter() - start
    passed = not bad and elapsed < 60
    criterion(4, "certificate-free projection", passed, f"{checked} cases, {len(bad)} with nonempty symmetric difference, {elapsed:.1f}s (limit 60s)")
    assert checked and not bad and elapsed < 60


def test_5_closed_form_counts(criterion):
    bad = []
    checked = 0
    for m, w, T in fleet_cases():
        for fidelity in ("general", "literal"):
            if fidelity == "literal" and not m.is_deterministic():
                continue
            rep = size_report(m, w, T, Full(), fidelity)
            b = len(normalize_machine(m).rules) if fidelity == "general" else 0
            expected = closed_form_counts(m.l, m.r, T, b)
            checked += 1
            if any(rep.clauses[g] != expected[g] for g in "BCDEI") or rep.num_vars != expected["vars"]:
                bad.append((m.name, w, T, fidelity))
    fixture = bundled("fixture")
    totals = {T: size_report(fixture, "1", T).total_clauses for T in range(2, 11)}
    c = totals[2] / 2**3
    over = [T for T, total in totals.items() if total > c * T**3]
    passed = not bad and not over
    criterion(5, "closed-form counts and cubic growth", passed, f"{checked} reports exact, {len(bad)} mismatches; c={c:.2f}, T in 2..10 over bound: {over}")
    assert not bad and not over


def test_6_duality(criterion):
    rng = random.Random(6)
    bad, checked = [], 0
    for _ in range(1000):
        n = rng.randint(1, 12)
        m = rng.randint(0, 48)
        f = CnfFormula(n, [[v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), min(3, n))] for _ in range(m)])
        checked += 1
        if dnf_is_tautology(negate_to_dnf(f)) != (not dpll(f).sat):
            bad.append(("random", n, m))
    fleet_checked = 0
    for machine, w, T in fleet_cases():
        for fidelity in ("general", "literal"):
            try:
                f = encode(machine, w, T, Full(), fidelity)
            except NotDeterministic:
                continue
            if f.num_vars > 16:
                continue
            fleet_checked += 1
            if dnf_is_tautology(negate_to_dnf(f)) != (not dpll(f).sat):
                bad.append((machine.name, w, T, fidelity))
    criterion(6, "CNF/DNF duality", not bad, f"{checked} random + {fleet_checked} fleet formulas, {len(bad)} disagreements")
    assert fleet_checked > 0 and not bad


def test_7_query_machine(criterion):
    bad, runs = [], 0
    for m, w, T in fleet_cases():
        expected = accepts_nondet(m, w, T).accepted
        finals = set()
        for oracle in ("cnf-sat", "dnf-tautology"):
            t = reduce_and_query(m, w, T, oracle)
            runs += 1
            finals.add(t.final)
            if len(t.queries) != 1 or (t.final == "yes-state") != expected:
                bad.append((m.name, w, T, oracle))
        if len(finals) != 1:
            bad.append((m.name, w, T, "oracles differ"))
    criterion(7, "query machine demo", not bad, f"{runs} transcripts, {len(bad)} disagreements")
    assert not bad


def test_8_literal_fidelity(criterion):
    agree_bad, raise_bad, det_cases, nondet_machines = [], [], 0, 0
    for m in fleet():
        if not m.is_deterministic():
            nondet_machines += 1
            for w in inputs(m, 1):
                try:
                    encode(m, w, 3, Full(), "literal")
                    raise_bad.append((m.name, w))
                except NotDeterministic:
                    pass
    for m, w, T in fleet_cases():
        if m.is_deterministic():
            det_cases += 1
            if dpll(encode(m, w, T, Full(), "literal")).sat != dpll(encode(m, w, T, Full(), "general")).sat:
                agree_bad.append((m.name, w, T))
    passed = not agree_bad and not raise_bad and nondet_machines > 0
    criterion(
        8,
        "literal vs general fidelity",
        passed,
        f"{det_cases} deterministic cases, {len(agree_bad)} disagreements; {nondet_machines} nondeterministic machines, {len(raise_bad)} missing NotDeterministic",
    )
    assert passed


def test_9_round_trips(criterion):
    rows, _ = central_sweep()
    bad = []
    for m, w, T, f, _, _ in rows:
        text = encode_dimacs(m, w, T)
        if parse_dimacs(emit_dimacs(f)) != f or parse_dimacs(text) != f or encode_dimacs(m, w, T) != text:
            bad.append((m.name, w, T))
    criterion(9, "DIMACS round trip and byte identity", not bad, f"{len(rows)} formulas, {len(bad)} failures")
    assert not bad
