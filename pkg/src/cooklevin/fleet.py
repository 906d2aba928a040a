"""The bundled test fleet of small machines."""

from __future__ import annotations

import itertools
from importlib import resources
from pathlib import Path

from .machine import MachineSpec, parse_machine

VERIFIERS = ("verifier", "verifier_any_one", "verifier_xor")


def load_machine(path: str | Path) -> MachineSpec:
    path = Path(path)
    return parse_machine(path.read_text(), name=path.stem)


def bundled_names() -> list[str]:
    files = resources.files("cooklevin") / "machines"
    return sorted(p.name[:-3] for p in files.iterdir() if p.name.endswith(".tm"))


def bundled(name: str) -> MachineSpec:
    text = (resources.files("cooklevin") / "machines" / f"{name}.tm").read_text()
    return parse_machine(text, name=name)


def fleet() -> list[MachineSpec]:
    return [bundled(name) for name in bundled_names()]


def verifiers() -> list[MachineSpec]:
    return [bundled(name) for name in VERIFIERS]


def inputs(m: MachineSpec, max_len: int = 4) -> list[str]:
    """Every input of length ``0..max_len`` over the non-blank symbols, shortest first."""
    symbols = range(1, m.l)
    return [m.render(w) for n in range(max_len + 1) for w in itertools.product(symbols, repeat=n)]
