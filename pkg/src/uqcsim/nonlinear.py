"""Nonlinear single-qubit maps and solution counting by exponential divergence.

A qubit restricted to real amplitudes ``cos(theta)|0> + sin(theta)|1>`` is
described by its Bloch angle ``theta``.  The maps here fix ``theta = 0`` and
expand small angles by ``e**lam`` per application.  Encoding the solution
count ``n`` of an oracle as ``theta = n / 2**N`` and iterating the map drives
any nonzero count up to a macroscopic angle in about ``N`` steps, while
``n = 0`` never moves.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainError, UnsupportedModeError, ValidationError

__all__ = [
    "HALF_PI",
    "DEFAULT_THRESHOLD",
    "OracleTable",
    "NonlinearMap",
    "EncodedState",
    "CountResult",
    "brute_force_count",
    "encode_count",
    "apply_map",
    "lyapunov_estimate",
    "iteration_cap",
    "count_solutions",
    "decide_existence",
]

HALF_PI = math.pi / 2
DEFAULT_THRESHOLD = math.pi / 4
MAP_KINDS = ("doubling", "smooth")

# Slack allowed on the recovered count before rounding.
_INTEGRALITY_TOL = 1e-6
_MAX_CALIBRATION_STEPS = 100_000


@dataclass(frozen=True, eq=False)
class OracleTable:
    """Truth table of ``f: {0,1}^N -> {0,1}``; ``table[x]`` is ``f(x)``."""

    n_bits: int
    table: np.ndarray

    def __post_init__(self) -> None:
        if self.n_bits < 0:
            raise DomainError(f"n_bits must be nonnegative, got {self.n_bits}")
        raw = np.asarray(self.table).reshape(-1)
        if raw.shape[0] != 1 << self.n_bits:
            raise ValidationError(
                f"truth table has {raw.shape[0]} entries, expected {1 << self.n_bits}"
            )
        if raw.size and not np.isin(raw, (0, 1)).all():
            raise ValidationError("truth table entries must be 0 or 1")
        tab = raw.astype(np.uint8)
        tab.setflags(write=False)
        object.__setattr__(self, "table", tab)

    @classmethod
    def from_solutions(cls, n_bits: int, solutions: Iterable[str]) -> OracleTable:
        """Build from N-bit strings; ``"101"`` is the input ``x = 5``."""
        tab = np.zeros(1 << n_bits, dtype=np.uint8)
        seen = set()
        for s in solutions:
            if len(s) != n_bits or set(s) - {"0", "1"}:
                raise ValidationError(f"solution {s!r} is not a {n_bits}-bit binary string")
            if s in seen:
                raise ValidationError(f"duplicate solution {s!r}")
            seen.add(s)
            tab[int(s, 2)] = 1
        return cls(n_bits, tab)

    @classmethod
    def random(cls, n_bits: int, rng: np.random.Generator, density: float = 0.5) -> OracleTable:
        return cls(n_bits, (rng.random(1 << n_bits) < density).astype(np.uint8))

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def solutions(self) -> list[str]:
        return [format(int(x), f"0{self.n_bits}b") for x in np.flatnonzero(self.table)]


def brute_force_count(oracle: OracleTable) -> int:
    """Number of inputs with ``f(x) = 1``, by enumeration."""
    return int(sum(oracle(x) for x in range(1 << oracle.n_bits)))


@dataclass(frozen=True)
class NonlinearMap:
    """Bloch-angle map on ``[0, pi/2]`` with fixed point 0 and slope ``e**lam`` there.

    ``doubling`` is ``min(2 theta, pi/2)`` (``lam = ln 2``).  ``smooth`` is
    ``(pi/2) (1 - exp(-c theta))`` with ``c = 2 e**lam / pi``.
    """

    kind: str = "doubling"
    lam: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in MAP_KINDS:
            raise DomainError(f"unknown map kind {self.kind!r}")
        if self.kind == "doubling":
            if self.lam is not None and not math.isclose(self.lam, math.log(2), rel_tol=1e-12):
                raise DomainError("the doubling map has lambda = ln 2")
            object.__setattr__(self, "lam", math.log(2))
        else:
            if self.lam is None or not (self.lam > 0 and math.isfinite(self.lam)):
                raise DomainError(f"smooth map needs a finite lambda > 0, got {self.lam}")
            object.__setattr__(self, "lam", float(self.lam))

    @property
    def slope_at_zero(self) -> float:
        return math.exp(self.lam)

    def __call__(self, theta: float) -> float:
        return apply_map(self, theta)


@dataclass(frozen=True)
class EncodedState:
    theta: float
    components: tuple[float, float] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", (math.cos(self.theta), math.sin(self.theta)))


@dataclass(frozen=True)
class CountResult:
    n_estimated: int
    iterations: int
    final_theta: float
    decision: str
    oracle_calls: int = 1

    def to_dict(self) -> dict:
        return {
            "n": self.n_estimated,
            "iterations": self.iterations,
            "final_theta": self.final_theta,
            "decision": self.decision,
        }


def encode_count(n: int, n_bits: int) -> EncodedState:
    """State ``cos(n/2**N)|0> + sin(n/2**N)|1>``."""
    if not 0 <= n <= 1 << n_bits:
        raise DomainError(f"count {n} outside [0, 2**{n_bits}]")
    return EncodedState(n / 2**n_bits)


def apply_map(nl_map: NonlinearMap, theta: float) -> float:
    if not 0.0 <= theta <= HALF_PI:
        raise DomainError(f"angle {theta} outside [0, pi/2]")
    if nl_map.kind == "doubling":
        return min(2.0 * theta, HALF_PI)
    c = 2.0 * math.exp(nl_map.lam) / math.pi
    return HALF_PI * -math.expm1(-c * theta)


def lyapunov_estimate(nl_map: NonlinearMap, theta0: float, delta: float, k: int) -> float:
    """Per-step log growth of the separation between two nearby trajectories.

    Both trajectories must stay below pi/4.  If one escapes earlier, the
    estimate uses the largest valid step count and warns with that count.
    """
    if k < 1:
        raise DomainError("need at least one iteration")
    if delta <= 0:
        raise DomainError("separation must be positive")
    if not (0.0 <= theta0 and theta0 + delta <= HALF_PI):
        raise DomainError("starting points must lie in [0, pi/2]")
    a, b = theta0, theta0 + delta
    if b >= DEFAULT_THRESHOLD:
        raise DomainError("starting points must lie below pi/4")
    used = 0
    for step in range(1, k + 1):
        na, nb = apply_map(nl_map, a), apply_map(nl_map, b)
        if max(na, nb) >= DEFAULT_THRESHOLD:
            break
        a, b, used = na, nb, step
    if used == 0:
        raise DomainError("trajectory leaves [0, pi/4) on the first step")
    if used < k:
        warnings.warn(f"trajectory escaped; lyapunov estimate uses k={used}", RuntimeWarning)
    return math.log(abs(b - a) / delta) / used


def _check_threshold(threshold: float) -> None:
    if not 0.0 < threshold <= HALF_PI:
        raise DomainError(f"threshold {threshold} outside (0, pi/2]")


def iteration_cap(nl_map: NonlinearMap, n_bits: int, threshold: float = DEFAULT_THRESHOLD) -> int:
    """Steps after which a trajectory still below ``threshold`` certifies ``n = 0``.

    Smallest nonzero encoding is ``2**-N``; by monotonicity every ``n >= 1``
    crosses no later than it does.  The cap is that crossing step plus 2,
    which is ``N + 2`` for the doubling map.
    """
    _check_threshold(threshold)
    theta, k = encode_count(1, n_bits).theta, 0
    while theta < threshold:
        nxt = apply_map(nl_map, theta)
        k += 1
        if nxt <= theta or k > _MAX_CALIBRATION_STEPS:
            raise UnsupportedModeError(
                f"{nl_map.kind} map with lambda={nl_map.lam} cannot reach threshold {threshold}"
            )
        theta = nxt
    return k + 2


class _CountingOracle:
    """Wraps an oracle and counts how often its solution count is consulted."""

    def __init__(self, oracle: OracleTable):
        self._oracle = oracle
        self.calls = 0

    @property
    def n_bits(self) -> int:
        return self._oracle.n_bits

    def prepare(self) -> EncodedState:
        self.calls += 1
        return encode_count(brute_force_count(self._oracle), self._oracle.n_bits)


def _iterate(nl_map: NonlinearMap, theta: float, threshold: float, cap: int) -> tuple[float, int]:
    k = 0
    while theta < threshold and k < cap:
        theta = apply_map(nl_map, theta)
        k += 1
    return theta, k


def count_solutions(
    oracle: OracleTable, nl_map: NonlinearMap | None = None, threshold: float = DEFAULT_THRESHOLD
) -> CountResult:
    """Recover the exact solution count from one oracle consultation.

    The encoded angle is doubled until it reaches ``threshold``; the count is
    then ``theta_k * 2**N / 2**k``.  No crossing within ``N + 2`` steps means
    there are no solutions.
    """
    nl_map = nl_map or NonlinearMap("doubling")
    if nl_map.kind != "doubling":
        raise UnsupportedModeError("exact counting needs the doubling map; smooth maps only decide")
    _check_threshold(threshold)
    if threshold > DEFAULT_THRESHOLD:
        raise DomainError("counting threshold must not exceed pi/4, or the map may clip")

    probe = _CountingOracle(oracle)
    theta0 = probe.prepare().theta
    n_bits = oracle.n_bits
    theta, k = _iterate(nl_map, theta0, threshold, n_bits + 2)

    if theta >= threshold:
        raw = theta * 2.0**n_bits / 2.0**k
        n = round(raw)
        if abs(raw - n) >= _INTEGRALITY_TOL:
            raise ArithmeticError(f"recovered count {raw!r} is not integral")
    else:
        n = 0
    return CountResult(
        n_estimated=int(n),
        iterations=k,
        final_theta=theta,
        decision="exists" if n > 0 else "not_exists",
        oracle_calls=probe.calls,
    )


def decide_existence(
    oracle: OracleTable, nl_map: NonlinearMap | None = None, threshold: float = DEFAULT_THRESHOLD
) -> bool:
    """True iff the iterated encoding becomes macroscopically distinct from ``|0>``."""
    nl_map = nl_map or NonlinearMap("doubling")
    cap = iteration_cap(nl_map, oracle.n_bits, threshold)
    theta0 = _CountingOracle(oracle).prepare().theta
    theta, _ = _iterate(nl_map, theta0, threshold, cap)
    return theta >= threshold
