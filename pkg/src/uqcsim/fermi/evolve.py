"""First-order Trotter evolution under either backend."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from ..errors import DomainError
from ..qstate import StateVector, apply_gates
from .fock import HoppingHamiltonian
from .jw import compiled_weight, jw_compile
from .native import NATIVE_TERM_COST, native_term_gate

__all__ = ["BACKENDS", "EvolutionSpec", "EvolutionResult", "trotter_evolve", "sweep_costs"]

BACKENDS = ("native", "jw")


@dataclass(frozen=True)
class EvolutionSpec:
    t: float
    steps: int = 1
    backend: str = "native"

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise DomainError(f"steps must be at least 1, got {self.steps}")
        if not math.isfinite(self.t):
            raise DomainError("evolution time must be finite")
        if self.backend not in BACKENDS:
            raise DomainError(f"unknown backend {self.backend!r}")


class EvolutionResult(NamedTuple):
    state: StateVector
    native_ops: int
    jw_weight_total: int


def sweep_costs(h: HoppingHamiltonian) -> tuple[int, int]:
    """Native op count and compiled JW weight of one sweep over all terms."""
    native = NATIVE_TERM_COST * len(h.terms)
    jw = sum(compiled_weight(jw_compile(term, h.geometry, 0.0)) for term in h.terms)
    return native, jw


def trotter_evolve(state: StateVector, h: HoppingHamiltonian, spec: EvolutionSpec) -> EvolutionResult:
    """Repeat ``spec.steps`` sweeps, each applying every term at angle ``c * t / steps``.

    Both cost counters are returned whichever backend ran.
    """
    if state.m_qubits != h.n_sites:
        raise DomainError(f"state has {state.m_qubits} qubits, Hamiltonian has {h.n_sites} sites")
    dt = spec.t / spec.steps
    if spec.backend == "native":
        for _ in range(spec.steps):
            for term in h.terms:
                state = native_term_gate(state, term, term.coefficient * dt)
    else:
        compiled = [jw_compile(term, h.geometry, term.coefficient * dt) for term in h.terms]
        for _ in range(spec.steps):
            for gates in compiled:
                state = apply_gates(state, gates)
    native, jw = sweep_costs(h)
    return EvolutionResult(state, native * spec.steps, jw * spec.steps)
