"""Second-quantized operators in the occupation-number basis.

Basis label bit ``i`` is the occupation of site ``i``.  Annihilation follows

    a_i |..., s_i = 1, ...> = (-1)**(sum_{j<i} s_j) |..., s_i = 0, ...>

Everything here is built directly from that rule by acting on basis labels,
so it serves as the reference the gate-level backends are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from ..errors import CapacityError, DomainError, ValidationError
from ..qstate import StateVector
from .lattice import LatticeGeometry

__all__ = [
    "TERM_KINDS",
    "FockOperatorTerm",
    "HoppingHamiltonian",
    "annihilation_matrix",
    "build_operator_matrix",
    "anticommutator_deviation",
    "hamiltonian_matrix",
    "exact_evolve",
    "particle_number",
    "sector_leakage",
    "sector_weights",
]

TERM_KINDS = ("hop", "conditional_hop", "number")

MAX_DENSE_OPERATOR_SITES = 14
MAX_ANTICOMMUTATOR_SITES = 10
MAX_EXACT_SITES = 12


@dataclass(frozen=True)
class FockOperatorTerm:
    """One Hamiltonian term.

    Hops contribute ``c * (a_i^dag a_j + a_j^dag a_i)`` and number terms
    ``c * n_i``; either is multiplied by the projector onto all ``controls``
    being occupied.
    """

    kind: str
    sites: tuple[int, ...]
    coefficient: float = 1.0
    controls: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in TERM_KINDS:
            raise DomainError(f"unknown term kind {self.kind!r}")
        sites = tuple(int(s) for s in self.sites)
        controls = tuple(sorted({int(c) for c in self.controls}))
        if len(controls) != len(self.controls):
            raise DomainError(f"duplicate controls in {self.controls}")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "controls", controls)
        object.__setattr__(self, "coefficient", float(self.coefficient))
        if not np.isfinite(self.coefficient):
            raise DomainError("coefficient must be finite")

        if self.kind == "number":
            if len(sites) != 1:
                raise DomainError("number term acts on exactly one site")
        else:
            if len(sites) != 2 or sites[0] == sites[1]:
                raise DomainError(f"hop needs two distinct sites, got {sites}")
        if self.kind == "hop" and controls:
            raise DomainError("plain hop cannot carry controls; use conditional_hop")
        if self.kind == "conditional_hop" and not controls:
            raise DomainError("conditional_hop needs at least one control")
        if set(controls) & set(sites):
            raise DomainError("controls must be disjoint from the term's sites")
        if min(sites + controls) < 0:
            raise DomainError("site indices must be nonnegative")

    @classmethod
    def hop(cls, i: int, j: int, coefficient: float = 1.0) -> FockOperatorTerm:
        return cls("hop", (i, j), coefficient)

    @classmethod
    def conditional_hop(
        cls, i: int, j: int, controls: Iterable[int], coefficient: float = 1.0
    ) -> FockOperatorTerm:
        return cls("conditional_hop", (i, j), coefficient, tuple(controls))

    @classmethod
    def number(cls, i: int, coefficient: float = 1.0) -> FockOperatorTerm:
        return cls("number", (i,), coefficient)

    @property
    def is_hop(self) -> bool:
        return self.kind != "number"

    @property
    def max_site(self) -> int:
        return max(self.sites + self.controls)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "sites": list(self.sites),
            "coefficient": self.coefficient,
            "controls": list(self.controls),
        }

    @classmethod
    def from_dict(cls, data: dict) -> FockOperatorTerm:
        try:
            return cls(
                data["kind"],
                tuple(data["sites"]),
                data.get("coefficient", 1.0),
                tuple(data.get("controls", ())),
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed term record {data!r}: {exc}") from exc


@dataclass(frozen=True)
class HoppingHamiltonian:
    geometry: LatticeGeometry
    terms: tuple[FockOperatorTerm, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        n = self.geometry.n_sites
        for term in terms:
            if term.max_site >= n:
                raise DomainError(f"term {term} references a site outside [0, {n})")

    @property
    def n_sites(self) -> int:
        return self.geometry.n_sites

    @classmethod
    def nearest_neighbor(
        cls,
        geometry: LatticeGeometry,
        hopping: float = 1.0,
        potentials: Sequence[float] | None = None,
    ) -> HoppingHamiltonian:
        """Uniform hops on every lattice edge plus optional on-site potentials."""
        terms = [FockOperatorTerm.hop(i, j, hopping) for i, j, _ in geometry.edge_list]
        if potentials is not None:
            if len(potentials) != geometry.n_sites:
                raise DomainError("need one potential per site")
            terms += [FockOperatorTerm.number(i, v) for i, v in enumerate(potentials) if v]
        return cls(geometry, tuple(terms))


def _check_sites(m_sites: int, indices: Iterable[int]) -> None:
    for k in indices:
        if not 0 <= k < m_sites:
            raise DomainError(f"site {k} out of range for {m_sites} sites")


def _below_parity(labels: np.ndarray, site: int) -> np.ndarray:
    below = np.int64((1 << site) - 1)
    return (np.bitwise_count(labels & below) & 1).astype(np.int64)


def _annihilate(labels: np.ndarray, site: int):
    """Apply a_site to each basis label: (valid, new_labels, signs)."""
    bit = np.int64(1 << site)
    valid = (labels & bit) != 0
    signs = 1 - 2 * _below_parity(labels, site)
    return valid, labels ^ bit, signs


def _create(labels: np.ndarray, site: int):
    bit = np.int64(1 << site)
    valid = (labels & bit) == 0
    signs = 1 - 2 * _below_parity(labels, site)
    return valid, labels | bit, signs


def _hop_entries(m_sites: int, dst: int, src: int, cols: np.ndarray):
    """Entries of a_dst^dag a_src restricted to the given columns."""
    ok1, mid, s1 = _annihilate(cols, src)
    ok2, rows, s2 = _create(mid, dst)
    ok = ok1 & ok2
    return rows[ok], cols[ok], (s1 * s2)[ok].astype(np.complex128)


def _term_coo(term: FockOperatorTerm, m_sites: int):
    cols = np.arange(1 << m_sites, dtype=np.int64)
    if term.controls:
        cmask = np.int64(sum(1 << c for c in term.controls))
        cols = cols[(cols & cmask) == cmask]
    if term.kind == "number":
        (i,) = term.sites
        occ = cols[(cols >> i) & 1 == 1]
        return occ, occ, np.full(occ.shape, term.coefficient, dtype=np.complex128)
    i, j = term.sites
    r1, c1, v1 = _hop_entries(m_sites, i, j, cols)
    r2, c2, v2 = _hop_entries(m_sites, j, i, cols)
    rows = np.concatenate([r1, r2])
    cols_out = np.concatenate([c1, c2])
    vals = term.coefficient * np.concatenate([v1, v2])
    return rows, cols_out, vals


def annihilation_matrix(site: int, m_sites: int) -> np.ndarray:
    """Dense matrix of a_site on ``m_sites`` sites."""
    _check_sites(m_sites, [site])
    dim = 1 << m_sites
    labels = np.arange(dim, dtype=np.int64)
    valid, new, signs = _annihilate(labels, site)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[new[valid], labels[valid]] = signs[valid]
    return mat


def build_operator_matrix(term: FockOperatorTerm, m_sites: int) -> np.ndarray:
    """Dense matrix of ``term`` on the ``2**m_sites`` dimensional Fock space."""
    if m_sites > MAX_DENSE_OPERATOR_SITES:
        raise CapacityError(f"dense operators are capped at {MAX_DENSE_OPERATOR_SITES} sites")
    _check_sites(m_sites, term.sites + term.controls)
    dim = 1 << m_sites
    rows, cols, vals = _term_coo(term, m_sites)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    np.add.at(mat, (rows, cols), vals)
    return mat


def anticommutator_deviation(i: int, j: int, m_sites: int) -> float:
    """Max-norm of ``{a_i, a_j^dag} - delta_ij * I``."""
    if m_sites > MAX_ANTICOMMUTATOR_SITES:
        raise CapacityError(f"anticommutator check is capped at {MAX_ANTICOMMUTATOR_SITES} sites")
    _check_sites(m_sites, [i, j])
    ai = annihilation_matrix(i, m_sites)
    aj_dag = annihilation_matrix(j, m_sites).conj().T
    anti = ai @ aj_dag + aj_dag @ ai
    if i == j:
        anti -= np.eye(1 << m_sites)
    return float(np.abs(anti).max())


def hamiltonian_matrix(h: HoppingHamiltonian) -> sp.csr_matrix:
    """Sparse matrix of the full Hamiltonian."""
    m = h.n_sites
    if m > MAX_DENSE_OPERATOR_SITES:
        raise CapacityError(f"Hamiltonian assembly is capped at {MAX_DENSE_OPERATOR_SITES} sites")
    dim = 1 << m
    parts = [_term_coo(term, m) for term in h.terms]
    if not parts:
        return sp.csr_matrix((dim, dim), dtype=np.complex128)
    rows = np.concatenate([p[0] for p in parts])
    cols = np.concatenate([p[1] for p in parts])
    vals = np.concatenate([p[2] for p in parts])
    return sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()


def particle_number(m_sites: int) -> np.ndarray:
    """Particle count of every basis label."""
    return np.bitwise_count(np.arange(1 << m_sites, dtype=np.int64)).astype(np.int64)


def exact_evolve(state: StateVector, h: HoppingHamiltonian, t: float) -> StateVector:
    """Apply ``exp(-i H t)`` by dense exponentiation, one particle-number block at a time."""
    m = h.n_sites
    if m > MAX_EXACT_SITES:
        raise CapacityError(f"exact evolution is capped at {MAX_EXACT_SITES} sites")
    if state.m_qubits != m:
        raise DomainError(f"state has {state.m_qubits} qubits, Hamiltonian has {m} sites")
    hmat = hamiltonian_matrix(h).tocoo()
    counts = particle_number(m)
    if np.any(counts[hmat.row] != counts[hmat.col]):
        raise ValidationError("Hamiltonian mixes particle-number sectors")
    hmat = hmat.tocsr()
    psi = state.amplitudes
    out = np.zeros_like(psi)
    for n in range(m + 1):
        idx = np.flatnonzero(counts == n)
        sub = psi[idx]
        if not np.any(sub):
            continue
        block = hmat[idx][:, idx].toarray()
        out[idx] = scipy.linalg.expm(-1j * t * block) @ sub
    return StateVector(m, out)


def sector_weights(state: StateVector) -> np.ndarray:
    """Probability weight in each particle-number sector ``0..m``."""
    counts = particle_number(state.m_qubits)
    return np.bincount(counts, weights=state.probabilities(), minlength=state.m_qubits + 1)


def sector_leakage(initial: StateVector, final: StateVector) -> float:
    """Largest change of any particle-number sector weight between two states."""
    return float(np.abs(sector_weights(final) - sector_weights(initial)).max())
