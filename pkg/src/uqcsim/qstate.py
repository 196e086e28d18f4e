"""Dense state-vector engine.

Amplitudes are stored in a flat complex128 array indexed by basis label, with
qubit 0 as the least-significant bit.  Gates never touch more than two target
qubits through a dense matrix; anything wider is expressed as a small matrix
combined with a Pauli-Z string, so the touched-qubit count stays explicit.

Two-target matrices use the local basis ``b0 + 2*b1`` where ``b0`` is the bit
of ``targets[0]`` and ``b1`` that of ``targets[1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, ValidationError

__all__ = [
    "StateVector",
    "GateMatrix",
    "CompiledGate",
    "GATE_KINDS",
    "I2",
    "X",
    "Y",
    "Z",
    "H",
    "new_basis_state",
    "apply_gate",
    "apply_gates",
    "global_phase_distance",
    "parity",
]

UNITARY_ATOL = 1e-12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)

GATE_KINDS = ("single", "two-site", "z-string-phase")


def parity(values: np.ndarray, mask: int) -> np.ndarray:
    """Parity (0 or 1) of the bits of ``values`` selected by ``mask``."""
    masked = np.bitwise_and(values, np.int64(mask))
    return (np.bitwise_count(masked) & 1).astype(np.int64)


def _bitmask(indices: Sequence[int]) -> int:
    mask = 0
    for k in indices:
        mask |= 1 << int(k)
    return mask


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of ``m_qubits`` qubits as ``2**m_qubits`` complex amplitudes."""

    m_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.m_qubits < 0:
            raise DomainError(f"m_qubits must be nonnegative, got {self.m_qubits}")
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 1 << self.m_qubits:
            raise ValidationError(
                f"expected {1 << self.m_qubits} amplitudes for {self.m_qubits} qubits, "
                f"got {amps.shape[0]}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex], normalize: bool = False) -> StateVector:
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        dim = amps.shape[0]
        m = dim.bit_length() - 1
        if dim == 0 or 1 << m != dim:
            raise ValidationError(f"amplitude count {dim} is not a power of two")
        norm = np.linalg.norm(amps)
        if normalize:
            if norm == 0:
                raise ValidationError("cannot normalize the zero vector")
            amps = amps / norm
        elif abs(norm - 1.0) > 1e-10:
            raise ValidationError(f"state norm is {norm!r}, expected 1")
        return cls(m, amps)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __len__(self) -> int:
        return self.dimension


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """A validated 2x2 or 4x4 unitary."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.complex128)
        if m.shape not in ((2, 2), (4, 4)):
            raise ValidationError(f"gate matrix must be 2x2 or 4x4, got shape {m.shape}")
        dev = np.abs(m @ m.conj().T - np.eye(m.shape[0])).max()
        if dev > UNITARY_ATOL:
            raise ValidationError(f"gate matrix is not unitary (deviation {dev:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> GateMatrix:
        return GateMatrix(self.entries.conj().T)


@dataclass(frozen=True, eq=False)
class CompiledGate:
    """A gate on at most two targets, optionally extended by a Z-string.

    ``kind`` selects how the Z-string enters:

    * ``"single"`` / ``"two-site"``: the operator is ``matrix`` on the targets
      tensored with ``Z`` on every z_string site.
    * ``"z-string-phase"``: ``matrix`` is applied to the targets only on the
      basis states where the z_string has odd parity; elsewhere the gate is
      the identity.  With ``matrix = -I`` this is the bare Z-string.

    For every kind, the gate acts only where all ``controls`` are occupied.
    """

    kind: str
    targets: tuple[int, ...]
    matrix: GateMatrix
    z_string: tuple[int, ...] = ()
    controls: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValidationError(f"unknown gate kind {self.kind!r}")
        matrix = self.matrix if isinstance(self.matrix, GateMatrix) else GateMatrix(self.matrix)
        targets = tuple(int(t) for t in self.targets)
        z_string = tuple(int(s) for s in self.z_string)
        controls = tuple(int(c) for c in self.controls)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "z_string", z_string)
        object.__setattr__(self, "controls", controls)

        n_targets = len(targets)
        if n_targets not in (1, 2) or len(set(targets)) != n_targets:
            raise DomainError(f"targets must be one or two distinct sites, got {targets}")
        if self.kind == "single" and n_targets != 1:
            raise ValidationError("single gate needs exactly one target")
        if self.kind == "two-site" and n_targets != 2:
            raise ValidationError("two-site gate needs exactly two targets")
        if matrix.dimension != 1 << n_targets:
            raise ValidationError(
                f"{matrix.dimension}x{matrix.dimension} matrix does not fit {n_targets} target(s)"
            )
        if len(set(z_string)) != len(z_string):
            raise DomainError(f"z_string has duplicates: {z_string}")
        if set(z_string) & set(targets):
            raise DomainError("z_string must exclude the targets")
        if len(set(controls)) != len(controls) or set(controls) & (set(targets) | set(z_string)):
            raise DomainError("controls must be distinct and disjoint from targets and z_string")
        if min(targets + z_string + controls) < 0:
            raise DomainError("qubit indices must be nonnegative")

    @property
    def weight(self) -> int:
        """Number of qubits the gate touches."""
        return len(self.targets) + len(self.z_string) + len(self.controls)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.targets + self.z_string + self.controls)

    def dagger(self) -> CompiledGate:
        # Z-string and control structure are both self-inverse around the matrix.
        return CompiledGate(self.kind, self.targets, self.matrix.dagger(), self.z_string, self.controls)


def new_basis_state(m_qubits: int, index: int) -> StateVector:
    """Computational basis state ``|index>`` on ``m_qubits`` qubits."""
    if m_qubits < 0:
        raise DomainError(f"m_qubits must be nonnegative, got {m_qubits}")
    if not 0 <= index < 1 << m_qubits:
        raise DomainError(f"basis index {index} out of range for {m_qubits} qubits")
    amps = np.zeros(1 << m_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(m_qubits, amps)


def apply_gate(state: StateVector, gate: CompiledGate) -> StateVector:
    """Return ``U|state>`` for the operator described by ``gate``."""
    m = state.m_qubits
    used = gate.targets + gate.z_string + gate.controls
    if max(used) >= m:
        raise DomainError(f"gate touches qubit {max(used)} but state has {m} qubits")

    tbits = [1 << t for t in gate.targets]
    tmask = _bitmask(gate.targets)
    cmask = _bitmask(gate.controls)
    zmask = _bitmask(gate.z_string)

    idx = np.arange(state.dimension, dtype=np.int64)
    base = idx[(idx & tmask) == 0]
    if cmask:
        base = base[(base & cmask) == cmask]
    if base.size == 0:
        return state

    if len(tbits) == 1:
        group = np.stack([base, base | tbits[0]])
    else:
        b0, b1 = tbits
        group = np.stack([base, base | b0, base | b1, base | b0 | b1])

    amps = state.amplitudes
    block = amps[group]
    rotated = gate.matrix.entries @ block
    if gate.kind == "z-string-phase":
        odd = parity(base, zmask).astype(bool)
        new_block = np.where(odd[None, :], rotated, block)
    else:
        sign = 1 - 2 * parity(base, zmask)
        new_block = rotated * sign[None, :]

    out = amps.copy()
    out[group] = new_block
    return StateVector(m, out)


def apply_gates(state: StateVector, gates: Sequence[CompiledGate]) -> StateVector:
    for gate in gates:
        state = apply_gate(state, gate)
    return state


def global_phase_distance(a: StateVector, b: StateVector) -> float:
    """Minimum over unit phases ``w`` of ``max_k |a_k - w*b_k|``."""
    if a.m_qubits != b.m_qubits:
        raise DomainError(f"dimension mismatch: {a.m_qubits} vs {b.m_qubits} qubits")
    va, vb = a.amplitudes, b.amplitudes

    def dist(phi: float) -> float:
        return float(np.abs(va - np.exp(1j * phi) * vb).max())

    overlap = np.vdot(vb, va)
    candidates = [0.0]
    if abs(overlap) > 0:
        candidates.append(float(np.angle(overlap)))
    # The max-norm objective can be multimodal; seed a local search from a grid.
    grid = np.linspace(-np.pi, np.pi, 256, endpoint=False)
    candidates.extend(grid.tolist())
    best_phi = min(candidates, key=dist)
    best = dist(best_phi)
    if best > 0:
        step = 2 * np.pi / 256
        res = minimize_scalar(
            dist, bounds=(best_phi - step, best_phi + step), method="bounded",
            options={"xatol": 1e-14},
        )
        best = min(best, float(res.fun))
    return best
