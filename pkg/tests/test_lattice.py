import itertools

import pytest

from uqcsim.errors import CapacityError, DomainError
from uqcsim.fermi import LatticeGeometry, site_coords, site_index


@pytest.mark.parametrize("coords, expected", [((0, 0), 0), ((1, 0), 1), ((0, 1), 3)])
def test_site_index_2d(coords, expected):
    assert site_index(coords, LatticeGeometry.hypercubic(2, 3)) == expected


def test_out_of_range_coordinate():
    with pytest.raises(DomainError):
        site_index((3, 0), LatticeGeometry.hypercubic(2, 3))


@pytest.mark.parametrize("d, l", [(1, 5), (2, 3), (3, 3), (4, 2)])
def test_row_major_bijection(d, l):
    g = LatticeGeometry.hypercubic(d, l)
    seen = set()
    for coords in itertools.product(range(l), repeat=d):
        idx = site_index(coords, g)
        assert idx == sum(x * l**k for k, x in enumerate(coords))
        assert site_coords(idx, g) == coords
        seen.add(idx)
    assert seen == set(range(g.n_sites))


@pytest.mark.parametrize("d, l", [(1, 4), (2, 3), (3, 4)])
def test_edge_set_is_nearest_neighbors(d, l):
    g = LatticeGeometry.hypercubic(d, l)
    brute = set()
    for a, b in itertools.combinations(itertools.product(range(l), repeat=d), 2):
        diff = [abs(x - y) for x, y in zip(a, b)]
        if sum(diff) == 1:
            brute.add(tuple(sorted((site_index(a, g), site_index(b, g)))))
    assert {(i, j) for i, j, _ in g.edges()} == brute
    assert len(brute) == d * l ** (d - 1) * (l - 1)


def test_hypercube_graph_edges_flip_one_bit():
    g = LatticeGeometry.hypercube(5)
    assert g.n_sites == 32
    for i, j, axis in g.edges():
        assert i ^ j == 1 << axis


def test_edge_axis_rejects_non_neighbors():
    g = LatticeGeometry.hypercubic(2, 3)
    assert g.edge_axis(0, 3) == 1
    with pytest.raises(DomainError):
        g.edge_axis(0, 4)
    with pytest.raises(DomainError):
        g.edge_axis(2, 3)  # consecutive labels, but a row wrap


def test_capacity():
    with pytest.raises(CapacityError):
        list(LatticeGeometry.hypercubic(3, 102).edges())
