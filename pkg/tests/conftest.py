from functools import reduce

import numpy as np
import pytest

PAULIS = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def embed(ops: dict, m: int) -> np.ndarray:
    """Kronecker product with ``ops[q]`` on qubit q (qubit 0 least significant)."""
    factors = [ops.get(q, PAULIS[0]) for q in reversed(range(m))]
    return reduce(np.kron, factors)


def embed_matrix(matrix: np.ndarray, targets, m: int) -> np.ndarray:
    """Lift a 2x2 or 4x4 matrix onto arbitrary targets via its Pauli expansion."""
    if len(targets) == 1:
        out = np.zeros((1 << m, 1 << m), dtype=complex)
        for p in PAULIS:
            coef = np.trace(p.conj().T @ matrix) / 2
            out += coef * embed({targets[0]: p}, m)
        return out
    t0, t1 = targets
    out = np.zeros((1 << m, 1 << m), dtype=complex)
    for pa in PAULIS:
        for pb in PAULIS:
            # local basis b0 + 2*b1 puts targets[1] in the high Kronecker factor
            coef = np.trace(np.kron(pb, pa).conj().T @ matrix) / 4
            out += coef * embed({t0: pa, t1: pb}, m)
    return out


def dense_gate(gate, m: int) -> np.ndarray:
    """Independent dense operator for a CompiledGate."""
    dim = 1 << m
    ident = np.eye(dim, dtype=complex)
    g_full = embed_matrix(gate.matrix.entries, gate.targets, m)
    zs = embed({q: PAULIS[3] for q in gate.z_string}, m)
    if gate.kind == "z-string-phase":
        odd = (ident - zs) / 2
        op = (ident - odd) + odd @ g_full
    else:
        op = g_full @ zs
    if gate.controls:
        proj = reduce(
            lambda acc, c: acc @ embed({c: np.diag([0, 1]).astype(complex)}, m),
            gate.controls,
            ident,
        )
        op = proj @ op + (ident - proj)
    return op


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in RESULTS:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
