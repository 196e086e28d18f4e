"""Native fermionic backend: each term is one primitive operation on the Fock state."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError
from ..qstate import StateVector, parity
from .fock import FockOperatorTerm

__all__ = ["native_hop_gate", "native_number_gate", "native_term_gate", "NATIVE_TERM_COST"]

NATIVE_TERM_COST = 1


def _check(state: StateVector, term: FockOperatorTerm) -> None:
    if term.max_site >= state.m_qubits:
        raise DomainError(
            f"term touches site {term.max_site} but state has {state.m_qubits} sites"
        )


def _control_mask(term: FockOperatorTerm) -> int:
    return sum(1 << c for c in term.controls)


def native_hop_gate(state: StateVector, term: FockOperatorTerm, theta: float) -> StateVector:
    """Apply ``exp(-i theta (a_i^dag a_j + a_j^dag a_i))`` on satisfied controls.

    Each pair of basis states connected by the hop is rotated by
    ``[[cos, -i s sin], [-i s sin, cos]]`` where ``s`` is the parity sign of
    the occupations strictly between the two sites.
    """
    if not term.is_hop:
        raise DomainError(f"native_hop_gate needs a hop term, got {term.kind!r}")
    _check(state, term)
    lo, hi = sorted(term.sites)
    blo, bhi = 1 << lo, 1 << hi
    between = (bhi - 1) & ~((blo << 1) - 1)
    cmask = _control_mask(term)

    labels = np.arange(state.dimension, dtype=np.int64)
    # Pair each state with lo occupied / hi empty to its partner one hop away.
    src = labels[((labels & blo) != 0) & ((labels & bhi) == 0)]
    if cmask:
        src = src[(src & cmask) == cmask]
    dst = src ^ (blo | bhi)
    sign = 1 - 2 * parity(src, between)

    c, s = np.cos(theta), np.sin(theta)
    amps = state.amplitudes
    a, b = amps[src], amps[dst]
    out = amps.copy()
    out[src] = c * a - 1j * sign * s * b
    out[dst] = -1j * sign * s * a + c * b
    return StateVector(state.m_qubits, out)


def native_number_gate(state: StateVector, term: FockOperatorTerm, theta: float) -> StateVector:
    """Apply ``exp(-i theta n_i)`` on satisfied controls."""
    if term.kind != "number":
        raise DomainError(f"native_number_gate needs a number term, got {term.kind!r}")
    _check(state, term)
    mask = (1 << term.sites[0]) | _control_mask(term)
    labels = np.arange(state.dimension, dtype=np.int64)
    hit = (labels & mask) == mask
    out = state.amplitudes.copy()
    out[hit] *= np.exp(-1j * theta)
    return StateVector(state.m_qubits, out)


def native_term_gate(state: StateVector, term: FockOperatorTerm, theta: float) -> StateVector:
    if term.is_hop:
        return native_hop_gate(state, term, theta)
    return native_number_gate(state, term, theta)
