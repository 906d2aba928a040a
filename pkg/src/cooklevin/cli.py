"""Command-line front end.

Exit codes: 0 on success or agreement, 1 when the encoding and the simulator
disagree, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import fleet
from .cnf import CnfFormula, dnf_is_tautology, emit_dimacs, parse_dimacs, parse_dnf
from .encoder import (
    CertificateFree,
    Full,
    certificate_vars,
    decode_certificate,
    decode_model,
    encode,
    encode_dimacs,
    size_report,
)
from .errors import CookLevinError, MalformedModel
from .machine import (
    MachineSpec,
    accepts_nondet,
    enumerate_certificates,
    format_config,
    guess_and_check,
    is_valid_trace,
    run_deterministic,
)
from .oracle import ORACLES, reduce_and_query, transcript_report
from .sat import all_models_projected, brute_force_sat, dpll

ENGINES = {"dpll": dpll, "brute": brute_force_sat}


class InputError(Exception):
    pass


def _load_machine(spec: str) -> MachineSpec:
    path = Path(spec)
    if path.exists():
        return fleet.load_machine(path)
    if spec in fleet.bundled_names():
        return fleet.bundled(spec)
    raise InputError(f"no machine file or bundled machine named {spec!r}")


def _mode(args) -> Full | CertificateFree:
    if args.mode == "full":
        if args.pin_len is not None or args.cert_len is not None:
            raise InputError("--pin-len/--cert-len only apply to --mode cert-free")
        return Full()
    if args.cert_len is None:
        raise InputError("--mode cert-free needs --cert-len")
    pin_len = args.pin_len
    if pin_len is None:
        pin_len = len(args.machine_spec.word(args.input))
    return CertificateFree(pin_len=pin_len, cert_len=args.cert_len)


def _write(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _print_trace(m: MachineSpec, trace) -> None:
    for c in trace.configs:
        print(format_config(m, c))


# --- subcommands -------------------------------------------------------------


def cmd_encode(args) -> int:
    m = args.machine_spec
    _write(encode_dimacs(m, args.input, args.steps, _mode(args), args.fidelity), args.output)
    return 0


def cmd_check(args) -> int:
    m = args.machine_spec
    mode = _mode(args)
    if args.cnf_override:
        f = parse_dimacs(_read(args.cnf_override))
    else:
        f = encode(m, args.input, args.steps, mode, args.fidelity)
    result = ENGINES[args.engine](f)
    if isinstance(mode, Full):
        expected = accepts_nondet(m, args.input, args.steps).accepted
        what = "accepting run"
    else:
        expected = bool(enumerate_certificates(m, args.input, mode.cert_len, args.steps))
        what = "accepted certificate"
    print(f"encoding: {result.verdict}")
    print(f"simulator: {what} {'found' if expected else 'not found'}")
    agree = result.sat == expected
    if result.sat:
        try:
            trace = decode_model(m, args.steps, result.model, args.fidelity)
        except MalformedModel as exc:
            print(f"decode: {exc}")
            agree = False
        else:
            valid = is_valid_trace(m, trace)
            print(f"decode: {len(trace)} steps, {'valid' if valid else 'INVALID'} trace")
            agree = agree and valid
    print("AGREE" if agree else "DISAGREE")
    return 0 if agree else 1


def cmd_simulate(args) -> int:
    m = args.machine_spec
    if args.cert is not None:
        outcome = guess_and_check(m, args.input, args.cert, args.steps)
    elif args.deterministic:
        outcome = run_deterministic(m, args.input, args.steps)
    else:
        outcome = accepts_nondet(m, args.input, args.steps)
    if outcome.accepted:
        _print_trace(m, outcome.witness)
        print(f"ACCEPT step={outcome.step}")
    else:
        print("NO-ACCEPT")
    return 0


def cmd_solve(args) -> int:
    text = _read(args.formula)
    if args.dnf:
        print("TAUTOLOGY" if dnf_is_tautology(parse_dnf(text)) else "NOT-TAUTOLOGY")
        return 0
    result = ENGINES[args.engine](parse_dimacs(text))
    print(result.verdict)
    if result.sat:
        lits = [str(v if result.model[v] else -v) for v in sorted(result.model)]
        print(" ".join(["v", *lits, "0"]))
    s = result.stats
    print(f"c decisions={s.decisions} propagations={s.propagations} visited={s.visited}")
    return 0


def cmd_enumerate(args) -> int:
    m = args.machine_spec
    certs = enumerate_certificates(m, args.input, args.cert_len, args.steps)
    for cert in certs:
        print(cert)
    if not args.via_sat:
        return 0
    mode = CertificateFree(pin_len=len(m.word(args.input)), cert_len=args.cert_len)
    f = encode(m, args.input, args.steps, mode, args.fidelity)
    projections = all_models_projected(f, certificate_vars(m, args.steps, mode, args.fidelity))
    via_sat = sorted(decode_certificate(m, args.steps, mode, dict(p), args.fidelity) for p in projections)
    print("via-sat:")
    for cert in via_sat:
        print(m.render(cert))
    agree = [m.render(c) for c in via_sat] == certs
    print("AGREE" if agree else "DISAGREE")
    return 0 if agree else 1


def cmd_reduce_demo(args) -> int:
    m = args.machine_spec
    names = sorted(ORACLES) if args.oracle == "both" else [args.oracle]
    for k, name in enumerate(names):
        if k:
            print()
        sys.stdout.write(transcript_report(reduce_and_query(m, args.input, args.steps, name)))
    return 0


def cmd_stats(args) -> int:
    m = args.machine_spec
    sys.stdout.write(size_report(m, args.input, args.steps, _mode(args), args.fidelity).table())
    return 0


def cmd_random_cnf(args) -> int:
    rng = random.Random(args.seed)
    clauses = []
    for _ in range(args.clauses):
        chosen = rng.sample(range(1, args.vars + 1), min(args.width, args.vars))
        clauses.append([v if rng.random() < 0.5 else -v for v in chosen])
    _write(emit_dimacs(CnfFormula(args.vars, clauses), [f"random {args.width}-cnf seed={args.seed}"]), args.output)
    return 0


# --- argument parsing --------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cooklevin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def machine_args(p, *, modes=True, fidelity=True):
        p.add_argument("--machine", required=True, help="machine file, or the name of a bundled machine")
        p.add_argument("--input", default="", help="input word (default: empty)")
        p.add_argument("--steps", type=_positive, required=True, help="step bound T")
        if modes:
            p.add_argument("--mode", choices=["full", "cert-free"], default="full")
            p.add_argument("--pin-len", type=_non_negative)
            p.add_argument("--cert-len", type=_non_negative)
        if fidelity:
            p.add_argument("--fidelity", choices=["literal", "general"], default="general")

    p = sub.add_parser("encode", help="write the CNF encoding as DIMACS")
    machine_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("check", help="encode, solve, decode and compare with the simulator")
    machine_args(p)
    p.add_argument("--engine", choices=sorted(ENGINES), default="dpll")
    p.add_argument("--cnf-override", help="solve this DIMACS file instead of the encoding")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simulate", help="run the machine directly")
    machine_args(p, modes=False, fidelity=False)
    p.add_argument("--cert", help="guess-and-check: write this certificate after the input")
    p.add_argument("--deterministic", action="store_true", help="refuse nondeterministic machines")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("solve", help="solve a DIMACS CNF (or decide a DNF tautology)")
    p.add_argument("formula", help="DIMACS file, or - for stdin")
    p.add_argument("--engine", choices=sorted(ENGINES), default="dpll")
    p.add_argument("--dnf", action="store_true", help="input is a 'p dnf' document; decide tautology")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", help="list accepted certificates")
    machine_args(p, modes=False)
    p.add_argument("--cert-len", type=_non_negative, required=True)
    p.add_argument("--via-sat", action="store_true", help="also enumerate through the certificate-free encoding")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("reduce-demo", help="one-query oracle machine transcript")
    machine_args(p, modes=False, fidelity=False)
    p.add_argument("--oracle", choices=[*sorted(ORACLES), "both"], default="cnf-sat")
    p.set_defaults(func=cmd_reduce_demo)

    p = sub.add_parser("stats", help="clause and variable counts per group")
    machine_args(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("random-cnf", help="write a seeded random k-CNF")
    p.add_argument("--vars", type=_positive, required=True)
    p.add_argument("--clauses", type=_non_negative, required=True)
    p.add_argument("--width", type=_positive, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_random_cnf)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if hasattr(args, "machine"):
            args.machine_spec = _load_machine(args.machine)
        return args.func(args)
    except (CookLevinError, InputError, ValueError, OSError) as exc:
        print(f"cooklevin {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
