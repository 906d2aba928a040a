import pytest

from cooklevin.cnf import emit_dimacs, parse_dimacs, parse_dnf
from cooklevin.encoder import encode
from cooklevin.fleet import bundled
from cooklevin.oracle import CNF_SAT, DNF_TAUTOLOGY, reduce_and_query, transcript_report


def test_accepted_input_cnf_oracle(fixture_machine):
    t = reduce_and_query(fixture_machine, "1", 2, CNF_SAT)
    assert len(t.queries) == 1
    assert t.queries[0][1] is True
    assert t.final == "yes-state"


def test_accepted_input_dnf_oracle(fixture_machine):
    t = reduce_and_query(fixture_machine, "1", 2, DNF_TAUTOLOGY)
    assert t.queries[0][1] is False
    assert t.final == "yes-state"


@pytest.mark.parametrize("oracle", ["cnf-sat", "dnf-tautology"])
def test_rejected_input(fixture_machine, oracle):
    t = reduce_and_query(fixture_machine, "", 2, oracle)
    assert t.final == "no-state"
    assert t.queries[0][1] is (oracle == "dnf-tautology")


def test_query_strings_parse(fixture_machine):
    cnf = reduce_and_query(fixture_machine, "1", 3, "cnf-sat").queries[0][0]
    dnf = reduce_and_query(fixture_machine, "1", 3, "dnf-tautology").queries[0][0]
    f = encode(fixture_machine, "1", 3)
    assert parse_dimacs(cnf) == f
    assert parse_dnf(dnf).terms == tuple(tuple(-x for x in c) for c in f.clauses)


def test_unknown_oracle(fixture_machine):
    with pytest.raises(ValueError):
        reduce_and_query(fixture_machine, "1", 2, "halting")


def test_report(fixture_machine):
    t = reduce_and_query(fixture_machine, "1", 2)
    report = transcript_report(t)
    assert "final: yes-state" in report
    assert "oracle (simulated): cnf-sat" in report
    size = len(t.queries[0][0].encode())
    assert f"query tape: {size} bytes" in report
    assert "final: no-state" in transcript_report(reduce_and_query(fixture_machine, "", 2))


def test_report_is_stable():
    m = bundled("nondet_writer")
    assert transcript_report(reduce_and_query(m, "01", 5)) == transcript_report(reduce_and_query(m, "01", 5))


def test_query_length_is_the_dimacs_length(fixture_machine):
    from cooklevin.encoder import encode_dimacs

    t = reduce_and_query(fixture_machine, "1", 4)
    assert t.work_before == len(encode_dimacs(fixture_machine, "1", 4).encode())
    assert t.queries[0][0] != emit_dimacs(encode(fixture_machine, "1", 4))  # carries the comment header
