"""Lattice geometries with a fixed row-major site ordering."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from ..errors import CapacityError, DomainError

__all__ = ["LatticeGeometry", "site_index", "site_coords", "MAX_ENUMERATED_SITES"]

MAX_ENUMERATED_SITES = 1 << 20

SHAPES = ("hypercubic", "hypercube_graph")


@dataclass(frozen=True)
class LatticeGeometry:
    """Open-boundary hypercubic lattice of side ``l`` in ``d`` dimensions.

    ``shape="hypercube_graph"`` is the d-dimensional hypercube graph: vertices
    are integers in ``[0, 2**d)`` and edges join labels differing in one bit.
    Its coordinates are the label bits, so it is the ``l = 2`` lattice under a
    different name.
    """

    d: int
    l: int = 2
    shape: str = "hypercubic"

    def __post_init__(self) -> None:
        if self.shape not in SHAPES:
            raise DomainError(f"unknown lattice shape {self.shape!r}")
        if self.d < 1:
            raise DomainError(f"dimension must be at least 1, got {self.d}")
        if self.shape == "hypercube_graph":
            if self.l != 2:
                raise DomainError("hypercube graph has side length 2")
        elif self.l < 1:
            raise DomainError(f"side length must be at least 1, got {self.l}")

    @classmethod
    def hypercubic(cls, d: int, l: int) -> LatticeGeometry:
        return cls(d, l, "hypercubic")

    @classmethod
    def hypercube(cls, d: int) -> LatticeGeometry:
        return cls(d, 2, "hypercube_graph")

    @property
    def n_sites(self) -> int:
        return self.l**self.d

    def _check_capacity(self) -> None:
        if self.n_sites > MAX_ENUMERATED_SITES:
            raise CapacityError(
                f"{self.n_sites} sites exceeds the enumeration cap of {MAX_ENUMERATED_SITES}"
            )

    def axis_stride(self, axis: int) -> int:
        if not 0 <= axis < self.d:
            raise DomainError(f"axis {axis} out of range for d={self.d}")
        return self.l**axis

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield nearest-neighbor edges as ``(i, j, axis)`` with ``i < j``."""
        self._check_capacity()
        for i in range(self.n_sites):
            for axis in range(self.d):
                stride = self.l**axis
                if (i // stride) % self.l != self.l - 1:
                    yield i, i + stride, axis

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(self.edges())

    def edge_axis(self, i: int, j: int) -> int:
        """Axis along which sites ``i`` and ``j`` are neighbors; DomainError otherwise."""
        a, b = site_coords(i, self), site_coords(j, self)
        diff = [k for k in range(self.d) if a[k] != b[k]]
        if len(diff) != 1 or abs(a[diff[0]] - b[diff[0]]) != 1:
            raise DomainError(f"sites {i} and {j} are not nearest neighbors")
        return diff[0]

    def are_neighbors(self, i: int, j: int) -> bool:
        try:
            self.edge_axis(i, j)
        except DomainError:
            return False
        return True

    def to_dict(self) -> dict:
        return {"shape": self.shape, "d": self.d, "l": self.l}


def site_index(coords: Sequence[int], geometry: LatticeGeometry) -> int:
    """Row-major index ``sum_k coords[k] * l**k``."""
    if len(coords) != geometry.d:
        raise DomainError(f"expected {geometry.d} coordinates, got {len(coords)}")
    index = 0
    for k, x in enumerate(coords):
        if not 0 <= x < geometry.l:
            raise DomainError(f"coordinate {x} on axis {k} outside [0, {geometry.l})")
        index += int(x) * geometry.l**k
    return index


def site_coords(index: int, geometry: LatticeGeometry) -> tuple[int, ...]:
    if not 0 <= index < geometry.n_sites:
        raise DomainError(f"site {index} outside [0, {geometry.n_sites})")
    coords = []
    for _ in range(geometry.d):
        index, x = divmod(index, geometry.l)
        coords.append(x)
    return tuple(coords)
