import pytest

from uqcsim.errors import CapacityError
from uqcsim.fermi import LatticeGeometry, edge_cost_rows, gate_count_scaling, hypercube_scaling


def test_2d_worst_strings():
    worst = gate_count_scaling(2, range(2, 7)).worst_string()
    assert [worst[(2, l)] for l in range(2, 7)] == [1, 2, 3, 4, 5]


def test_3d_worst_strings():
    worst = gate_count_scaling(3, [2, 3]).worst_string()
    assert [worst[(3, 2)], worst[(3, 3)]] == [3, 8]


@pytest.mark.parametrize("l", [2, 5, 40])
def test_1d_all_zero(l):
    rows = gate_count_scaling(1, [l]).rows
    assert [r.string_length for r in rows] == [0]
    assert [r.compiled_weight for r in rows] == [2]


@pytest.mark.parametrize("d, l", [(2, 4), (3, 3), (4, 3)])
def test_row_invariants(d, l):
    for r in edge_cost_rows(LatticeGeometry.hypercubic(d, l)):
        assert r.string_length == l**r.axis - 1
        assert r.compiled_weight == r.string_length + 2


def test_rows_sorted_by_l_then_axis():
    rows = gate_count_scaling(2, [5, 3, 4]).rows
    assert [(r.l, r.axis) for r in rows] == sorted((r.l, r.axis) for r in rows)


def test_hypercube():
    report = hypercube_scaling(range(2, 8))
    worst = report.worst_string()
    assert all(worst[(d, 2)] + 1 == 2 ** (d - 1) for d in range(2, 8))
    for r in report.rows:
        assert r.string_length == 2**r.axis - 1


def test_capacity():
    with pytest.raises(CapacityError):
        gate_count_scaling(2, [1025])
