"""Cook-Levin tableau encoding of bounded Turing-machine runs, with simulators and SAT solvers to check it."""

__version__ = "0.1.0"
