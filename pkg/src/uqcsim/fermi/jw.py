"""Jordan-Wigner compilation of Fock-space terms into qubit gates.

Under the row-major ordering a hop between sites ``i < j`` maps to

    a_i^dag a_j + h.c. = (X_i X_j + Y_i Y_j) / 2 * Z_{i+1} ... Z_{j-1}

Its exponential is compiled as a two-site matched rotation on ``(i, j)``,
conjugated by a Z-string phase gate that flips the sign of the rotation's
generator whenever the sites strictly between ``i`` and ``j`` hold an odd
number of fermions.  Adjacent sites need no conjugation, which is the whole
of the one-dimensional case.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from ..errors import DomainError
from ..qstate import CompiledGate, GateMatrix
from .fock import FockOperatorTerm
from .lattice import LatticeGeometry

__all__ = [
    "hop_rotation",
    "jw_compile",
    "jw_string_length",
    "jw_string",
    "compiled_weight",
]

# Z on the first target, identity on the second, in the local basis b0 + 2*b1.
_Z_FIRST = GateMatrix(np.diag([1.0, -1.0, 1.0, -1.0]).astype(complex))


def hop_rotation(theta: float) -> GateMatrix:
    """``exp(-i theta (XX + YY) / 2)`` on two qubits."""
    c, s = np.cos(theta), np.sin(theta)
    m = np.eye(4, dtype=complex)
    m[1, 1] = m[2, 2] = c
    m[1, 2] = m[2, 1] = -1j * s
    return GateMatrix(m)


def jw_string(i: int, j: int) -> tuple[int, ...]:
    lo, hi = sorted((i, j))
    return tuple(range(lo + 1, hi))


def jw_string_length(i: int, j: int, geometry: LatticeGeometry | None = None) -> int:
    """Number of sites strictly between ``i`` and ``j`` in the site ordering."""
    if i == j:
        raise DomainError("string length needs two distinct sites")
    if geometry is not None:
        n = geometry.n_sites
        if not (0 <= i < n and 0 <= j < n):
            raise DomainError(f"sites ({i}, {j}) outside [0, {n})")
    return abs(i - j) - 1


def jw_compile(
    term: FockOperatorTerm, geometry: LatticeGeometry, theta: float
) -> list[CompiledGate]:
    """Qubit gate sequence realizing the native gate of ``term`` at angle ``theta``."""
    if term.max_site >= geometry.n_sites:
        raise DomainError(f"term {term} does not fit a {geometry.n_sites}-site lattice")
    if term.kind == "number":
        phase = GateMatrix(np.diag([1.0, np.exp(-1j * theta)]))
        return [CompiledGate("single", term.sites, phase, controls=term.controls)]

    i, j = term.sites
    if not geometry.are_neighbors(i, j):
        raise DomainError(f"sites {i} and {j} are not lattice neighbors")
    lo, hi = sorted((i, j))
    core = CompiledGate("two-site", (lo, hi), hop_rotation(theta), controls=term.controls)
    string = jw_string(lo, hi)
    if not string:
        return [core]
    flip = CompiledGate("z-string-phase", (lo, hi), _Z_FIRST, z_string=string)
    return [flip, core, flip]


def compiled_weight(gates: Sequence[CompiledGate]) -> int:
    """Number of distinct qubits a compiled sequence touches."""
    return len(reduce(frozenset.union, (g.support for g in gates), frozenset()))
