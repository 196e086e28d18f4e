import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uqcsim.errors import DomainError, UnsupportedModeError, ValidationError
from uqcsim.nonlinear import (
    HALF_PI,
    NonlinearMap,
    OracleTable,
    apply_map,
    brute_force_count,
    count_solutions,
    decide_existence,
    encode_count,
    iteration_cap,
    lyapunov_estimate,
)

DOUBLING = NonlinearMap("doubling")


def oracle_with_count(n_bits, n, rng):
    table = np.zeros(1 << n_bits, dtype=np.uint8)
    table[rng.choice(1 << n_bits, n, replace=False)] = 1
    return OracleTable(n_bits, table)


class TestOracle:
    def test_all_zero(self):
        assert brute_force_count(OracleTable(2, [0, 0, 0, 0])) == 0

    def test_by_inspection(self):
        assert brute_force_count(OracleTable(2, [0, 1, 1, 0])) == 2

    def test_random_table(self, rng):
        tab = rng.integers(0, 2, 256)
        assert brute_force_count(OracleTable(8, tab)) == int(tab.sum())

    def test_bad_length(self):
        with pytest.raises(ValidationError):
            OracleTable(3, [0, 1])

    def test_bad_entries(self):
        with pytest.raises(ValidationError):
            OracleTable(1, [0, 2])

    def test_from_solutions(self):
        o = OracleTable.from_solutions(3, ["101", "000"])
        assert list(o.table) == [1, 0, 0, 0, 0, 1, 0, 0]
        assert o.solutions() == ["000", "101"]

    @pytest.mark.parametrize("sols", [["10"], ["101", "101"], ["1x1"]])
    def test_bad_solutions(self, sols):
        with pytest.raises(ValidationError):
            OracleTable.from_solutions(3, sols)


class TestEncoding:
    def test_zero_is_fixed_point(self):
        e = encode_count(0, 4)
        assert e.theta == 0 and e.components == (1.0, 0.0)

    def test_one_of_sixteen(self):
        e = encode_count(1, 4)
        assert e.theta == 0.0625
        assert e.components[0] == pytest.approx(0.998047510700099, abs=1e-14)
        assert e.components[1] == pytest.approx(0.0624593178423802, abs=1e-14)

    def test_full_count_is_one_radian(self):
        e = encode_count(8, 3)
        assert e.theta == 1.0
        assert e.components == pytest.approx((0.5403023058681398, 0.8414709848078965), abs=1e-15)

    @pytest.mark.parametrize("n", [-1, 9])
    def test_range(self, n):
        with pytest.raises(DomainError):
            encode_count(n, 3)

    @given(st.integers(0, 12).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, 1 << N))))
    def test_normalized(self, case):
        N, n = case
        c, s = encode_count(n, N).components
        assert abs(c * c + s * s - 1) <= 1e-12


class TestMaps:
    def test_doubling_fixed_point(self):
        assert apply_map(DOUBLING, 0.0) == 0.0

    def test_doubling(self):
        assert apply_map(DOUBLING, 0.3) == 0.6

    def test_doubling_clips(self):
        assert apply_map(DOUBLING, 1.2) == HALF_PI

    def test_smooth_first_order(self):
        m = NonlinearMap("smooth", math.log(2))
        assert apply_map(m, 0.001) == pytest.approx(0.0019987273006629465, rel=1e-12)

    @pytest.mark.parametrize("lam", [0.25, 0.5, math.log(2), 1.5])
    def test_smooth_slope_and_fixed_point(self, lam):
        m = NonlinearMap("smooth", lam)
        assert apply_map(m, 0.0) == 0.0
        h = 1e-7
        assert (apply_map(m, h) - apply_map(m, 0.0)) / h == pytest.approx(math.exp(lam), rel=1e-6)

    @pytest.mark.parametrize("nl_map", [DOUBLING, NonlinearMap("smooth", 0.5), NonlinearMap("smooth", 2.0)])
    def test_monotone_and_in_range(self, nl_map):
        grid = np.linspace(0, HALF_PI, 10_000)
        vals = np.array([apply_map(nl_map, t) for t in grid])
        assert np.all(np.diff(vals) >= 0)
        assert vals.min() >= 0 and vals.max() <= HALF_PI

    def test_domain(self):
        with pytest.raises(DomainError):
            apply_map(DOUBLING, -0.1)
        with pytest.raises(DomainError):
            apply_map(DOUBLING, 2.0)

    def test_invalid_lambda(self):
        with pytest.raises(DomainError):
            NonlinearMap("smooth", -1.0)
        with pytest.raises(DomainError):
            NonlinearMap("doubling", 0.5)


class TestLyapunov:
    def test_doubling_exact(self):
        assert lyapunov_estimate(DOUBLING, 1e-4, 1e-6, 5) == pytest.approx(math.log(2), abs=1e-6)

    def test_smooth(self):
        est = lyapunov_estimate(NonlinearMap("smooth", 0.5), 1e-4, 1e-6, 5)
        assert 0.475 <= est <= 0.525

    def test_zero_steps_rejected(self):
        with pytest.raises(DomainError):
            lyapunov_estimate(DOUBLING, 1e-4, 1e-6, 0)

    def test_escape_uses_largest_valid_k(self):
        with pytest.warns(RuntimeWarning, match="k=3"):
            est = lyapunov_estimate(DOUBLING, 0.05, 1e-6, 10)
        assert est == pytest.approx(math.log(2), abs=1e-6)

    @pytest.mark.parametrize("nl_map", [DOUBLING, NonlinearMap("smooth", 0.25), NonlinearMap("smooth", 0.5)])
    def test_separation_grows_like_exp_lambda_k(self, nl_map):
        theta0, delta = 1e-5, 1e-9
        a, b = theta0, theta0 + delta
        for k in range(1, 40):
            a, b = apply_map(nl_map, a), apply_map(nl_map, b)
            if b > 0.01:
                break
            ratio = (b - a) / (delta * math.exp(nl_map.lam * k))
            assert abs(ratio - 1) <= 0.05


class TestCounting:
    def test_all_zero(self):
        r = count_solutions(OracleTable(6, np.zeros(64)), DOUBLING)
        assert (r.n_estimated, r.iterations, r.decision) == (0, 8, "not_exists")

    @pytest.mark.parametrize("N", range(0, 13))
    def test_empty_oracle_never_misreported(self, N):
        r = count_solutions(OracleTable(N, np.zeros(1 << N)), DOUBLING)
        assert (r.n_estimated, r.iterations, r.decision) == (0, N + 2, "not_exists")

    def test_single_solution_n4(self):
        r = count_solutions(OracleTable.from_solutions(4, ["0110"]), DOUBLING)
        assert (r.n_estimated, r.iterations, r.final_theta) == (1, 4, 1.0)

    def test_half_full_n3(self):
        r = count_solutions(OracleTable(3, [1, 1, 0, 0, 1, 0, 1, 0]), DOUBLING)
        assert (r.n_estimated, r.iterations, r.final_theta) == (4, 1, 1.0)

    def test_every_input_a_solution(self):
        r = count_solutions(OracleTable(5, np.ones(32)), DOUBLING)
        assert (r.n_estimated, r.iterations) == (32, 0)

    def test_exhaustive_n3(self):
        for bits in itertools.product([0, 1], repeat=8):
            oracle = OracleTable(3, bits)
            r = count_solutions(oracle, DOUBLING)
            assert r.n_estimated == sum(bits)
            assert r.oracle_calls == 1
            assert (r.decision == "exists") == (sum(bits) > 0)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(1, 12).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, 1 << N), st.integers(0, 2**32 - 1))))
    def test_exact_for_any_count(self, case):
        N, n, seed = case
        oracle = oracle_with_count(N, n, np.random.default_rng(seed))
        r = count_solutions(oracle, DOUBLING)
        assert r.n_estimated == n
        assert r.iterations <= N + 2

    @pytest.mark.parametrize("N", range(1, 13))
    def test_worst_case_iterations(self, N, rng):
        r = count_solutions(oracle_with_count(N, 1, rng), DOUBLING)
        assert N - 1 <= r.iterations <= N + 1

    def test_smooth_map_unsupported(self):
        with pytest.raises(UnsupportedModeError):
            count_solutions(OracleTable(2, [0, 1, 0, 0]), NonlinearMap("smooth", 0.5))

    def test_threshold_above_clip_guard(self):
        with pytest.raises(DomainError):
            count_solutions(OracleTable(2, [0, 1, 0, 0]), DOUBLING, threshold=1.0)

    def test_smaller_threshold_still_exact(self, rng):
        for n in range(0, 65, 7):
            r = count_solutions(oracle_with_count(6, n, rng), DOUBLING, threshold=0.3)
            assert r.n_estimated == n


class TestDecision:
    def test_all_zero(self):
        assert decide_existence(OracleTable(5, np.zeros(32)), DOUBLING) is False

    def test_one_solution(self):
        assert decide_existence(OracleTable.from_solutions(5, ["10011"]), DOUBLING) is True

    @pytest.mark.parametrize("nl_map", [DOUBLING, NonlinearMap("smooth", math.log(2)), NonlinearMap("smooth", 0.5)])
    def test_exhaustive_n3(self, nl_map):
        for bits in itertools.product([0, 1], repeat=8):
            assert decide_existence(OracleTable(3, bits), nl_map) == (sum(bits) > 0)

    def test_smooth_worst_case_larger_n(self, rng):
        m = NonlinearMap("smooth", 0.5)
        for N in range(1, 11):
            assert decide_existence(oracle_with_count(N, 1, rng), m)
            assert not decide_existence(OracleTable(N, np.zeros(1 << N)), m)

    def test_cap_is_n_plus_two_for_doubling(self):
        assert [iteration_cap(DOUBLING, N) for N in range(1, 13)] == [N + 2 for N in range(1, 13)]

    def test_unreachable_threshold(self):
        # this map saturates below pi/4
        with pytest.raises(UnsupportedModeError):
            decide_existence(OracleTable(3, np.zeros(8)), NonlinearMap("smooth", 0.25))
        assert decide_existence(OracleTable.from_solutions(3, ["001"]), NonlinearMap("smooth", 0.25), threshold=0.5)
