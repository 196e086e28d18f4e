"""Seeded random Hamiltonians and initial states for cross-checks."""

from __future__ import annotations

import numpy as np

from ..qstate import StateVector, new_basis_state
from .fock import FockOperatorTerm, HoppingHamiltonian
from .lattice import LatticeGeometry

__all__ = ["random_instance", "random_state", "occupation_state"]


def random_instance(
    geometry: LatticeGeometry,
    rng: np.random.Generator,
    n_terms: int | None = None,
    conditional_fraction: float = 0.4,
    number_fraction: float = 0.15,
) -> HoppingHamiltonian:
    """Random nearest-neighbor hops, conditional hops and number terms."""
    edges = geometry.edge_list
    n = geometry.n_sites
    if n_terms is None:
        n_terms = max(2, len(edges) + 2)
    terms = []
    for _ in range(n_terms):
        coef = float(rng.uniform(-1.5, 1.5))
        if not edges or rng.random() < number_fraction:
            terms.append(FockOperatorTerm.number(int(rng.integers(n)), coef))
            continue
        i, j, _ = edges[int(rng.integers(len(edges)))]
        if rng.random() < 0.5:
            i, j = j, i
        others = [s for s in range(n) if s not in (i, j)]
        if others and rng.random() < conditional_fraction:
            k = int(rng.integers(1, min(2, len(others)) + 1))
            controls = tuple(int(c) for c in rng.choice(others, size=k, replace=False))
            terms.append(FockOperatorTerm.conditional_hop(i, j, controls, coef))
        else:
            terms.append(FockOperatorTerm.hop(i, j, coef))
    return HoppingHamiltonian(geometry, tuple(terms))


def random_state(m_qubits: int, rng: np.random.Generator) -> StateVector:
    dim = 1 << m_qubits
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector.from_amplitudes(v, normalize=True)


def occupation_state(m_sites: int, occupied) -> StateVector:
    return new_basis_state(m_sites, sum(1 << int(s) for s in set(occupied)))
