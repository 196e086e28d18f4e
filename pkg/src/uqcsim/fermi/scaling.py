"""Enumerated Jordan-Wigner string costs over whole lattices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from ..errors import CapacityError, DomainError
from .lattice import MAX_ENUMERATED_SITES, LatticeGeometry
from .jw import jw_string_length

__all__ = [
    "CSV_HEADER",
    "CostRow",
    "GateCostReport",
    "OverheadLawViolation",
    "edge_cost_rows",
    "gate_count_scaling",
    "hypercube_scaling",
]

CSV_HEADER = ("d", "l", "axis", "string_length", "compiled_weight")


class OverheadLawViolation(AssertionError):
    """Enumerated worst-case string length disagrees with the closed form."""


class CostRow(NamedTuple):
    d: int
    l: int
    axis: int
    string_length: int
    compiled_weight: int


@dataclass(frozen=True)
class GateCostReport:
    shape: str
    rows: tuple[CostRow, ...]

    def worst_string(self) -> dict[tuple[int, int], int]:
        """Worst string length per ``(d, l)``."""
        worst: dict[tuple[int, int], int] = {}
        for r in self.rows:
            key = (r.d, r.l)
            worst[key] = max(worst.get(key, -1), r.string_length)
        return worst


def edge_cost_rows(geometry: LatticeGeometry) -> list[CostRow]:
    """One row per axis, after checking every edge along it has the same cost."""
    if geometry.n_sites > MAX_ENUMERATED_SITES:
        raise CapacityError(f"{geometry.n_sites} sites exceeds the enumeration cap")
    per_axis: dict[int, set[int]] = {}
    for i, j, axis in geometry.edges():
        per_axis.setdefault(axis, set()).add(jw_string_length(i, j, geometry))
    rows = []
    for axis in sorted(per_axis):
        lengths = per_axis[axis]
        if len(lengths) != 1:
            raise OverheadLawViolation(f"axis {axis} has non-uniform string lengths {lengths}")
        (length,) = lengths
        rows.append(CostRow(geometry.d, geometry.l, axis, length, length + 2))
    return rows


def _check_law(geometry: LatticeGeometry, rows: list[CostRow]) -> None:
    worst = max((r.string_length for r in rows), default=0)
    expected = geometry.l ** (geometry.d - 1)
    if worst + 1 != expected:
        raise OverheadLawViolation(
            f"d={geometry.d} l={geometry.l}: worst string + 1 = {worst + 1}, expected {expected}"
        )


def gate_count_scaling(d: int, l_values: Iterable[int]) -> GateCostReport:
    """Cost rows for hypercubic lattices of dimension ``d`` over several side lengths."""
    rows: list[CostRow] = []
    for l in sorted(set(l_values)):
        if l < 2:
            raise DomainError(f"side length must be at least 2, got {l}")
        geometry = LatticeGeometry.hypercubic(d, l)
        geo_rows = edge_cost_rows(geometry)
        _check_law(geometry, geo_rows)
        rows.extend(geo_rows)
    return GateCostReport("hypercubic", tuple(rows))


def hypercube_scaling(d_values: Iterable[int]) -> GateCostReport:
    """Cost rows for hypercube graphs; worst string + 1 must equal ``2**(d-1)``."""
    rows: list[CostRow] = []
    for d in sorted(set(d_values)):
        geometry = LatticeGeometry.hypercube(d)
        geo_rows = edge_cost_rows(geometry)
        _check_law(geometry, geo_rows)
        rows.extend(geo_rows)
    return GateCostReport("hypercube_graph", tuple(rows))
