import itertools
import math

import mpmath
import pytest

from circtheta.cubic import a_cubic
from circtheta.lattice import (
    WorkBudgetExceeded,
    YTuple,
    box_points,
    f_mn_series,
    f_mn_via_g,
    g_mn,
    lattice_tail_bound,
    shell,
)
from circtheta.numeric_core import TauParam

# 2 * sum_r exp(-2 pi r^2), mpmath at 40 digits
G12_ZERO_AT_I = 2.0074697709754781821
# F_{1,2}(0,0|i) by enumeration to |r| <= 20 with mpmath at 40 digits
F12_ZERO_AT_I = 1.0864348112133080146


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def brute_g(m, ys, tau, R=10):
    """Constrained sum over a full cube, written independently of the shell enumerator."""
    mpmath.mp.dps = 30
    n = len(ys)
    q = mpmath.exp(2j * mpmath.pi * tau)
    total = 0
    for r in itertools.product(range(-R, R + 1), repeat=n):
        if sum(r) != 0:
            continue
        total += q ** (mpmath.mpf(sum(x * x for x in r)) / 2) * mpmath.exp(
            2j * sum(a * b for a, b in zip(r, ys))
        )
    return complex(m * n * total)


class TestEnumeration:
    @pytest.mark.parametrize("dim,R", [(0, 3), (1, 4), (2, 3), (3, 2)])
    def test_box_is_the_full_cube_once(self, dim, R):
        pts = list(box_points(dim, R))
        assert len(pts) == len(set(pts)) == (2 * R + 1) ** dim
        assert set(pts) == set(itertools.product(range(-R, R + 1), repeat=dim))

    def test_shells_are_prefix_ordered(self):
        small = list(box_points(2, 3))
        assert list(box_points(2, 5))[: len(small)] == small
        assert all(max(map(abs, p)) == 4 for p in shell(2, 4))


class TestYTuple:
    def test_rejects_nonzero_sum(self):
        with pytest.raises(ValueError):
            YTuple((0.1, 0.2))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            YTuple(())

    def test_closing(self):
        ys = YTuple.closing([0.1 + 0.2j, -0.3j])
        assert ys.n == 3 and abs(sum(ys)) < 1e-16


class TestG:
    @pytest.mark.parametrize("m", [1, 2, 5])
    def test_n1_is_m(self, m):
        assert g_mn(m, [0], 0.3 + 0.9j) == m

    def test_g12_at_zero(self):
        assert g_mn(1, [0, 0], 1j) == pytest.approx(G12_ZERO_AT_I, rel=1e-15)

    def test_against_brute_force(self):
        ys, tau = (0.3 + 0.1j, -0.1 - 0.2j, -0.2 + 0.1j), 0.2 + 1.1j
        assert rel(g_mn(2, ys, tau), brute_g(2, ys, tau)) < 1e-13

    def test_g13_is_three_times_a(self, rng):
        # G carries the factor mn = 3; the cubic sum a has none
        for _ in range(20):
            tau = rng.tau(((-0.5, 0.5), (0.8, 2.0)))
            x, y = (rng.complex_in(((-0.5, 0.5), (-0.5, 0.5))) for _ in range(2))
            assert rel(g_mn(1, [x, y, -x - y], tau), 3 * a_cubic(x, y, tau)) < 1e-12

    def test_permutation_invariance(self, rng):
        for _ in range(20):
            n = 2 + int(rng.random() * 2)
            ys = rng.ys(n, 0.5)
            tau = rng.tau(((-0.5, 0.5), (0.8, 2.0)))
            base = g_mn(2, ys, tau)
            for perm in itertools.permutations(ys):
                assert rel(g_mn(2, perm, tau), base) < 1e-12

    def test_negation_invariance(self, rng):
        for _ in range(20):
            ys = rng.ys(3, 0.5)
            tau = rng.tau(((-0.5, 0.5), (0.8, 2.0)))
            assert rel(g_mn(1, [-y for y in ys], tau), g_mn(1, ys, tau)) < 1e-12

    def test_work_budget(self):
        with pytest.raises(WorkBudgetExceeded):
            g_mn(1, [0] * 5, 1j, 12, budget=10**5)


class TestF:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_n1_is_one(self, m):
        assert f_mn_series(m, [0], 0.1 + 0.6j) == 1
        assert f_mn_via_g(m, [0], 0.1 + 0.6j) == pytest.approx(1, rel=1e-15)

    def test_m2_n1_is_one_not_one_plus_q(self):
        tau = TauParam(0.2 + 0.9j)
        f = f_mn_series(2, [0], tau)
        assert f == 1
        assert abs(f - (1 + tau.q)) == pytest.approx(abs(tau.q))

    def test_m1_n2_at_zero(self):
        assert f_mn_series(1, [0, 0], 1j) == pytest.approx(F12_ZERO_AT_I, rel=1e-15)
        assert rel(f_mn_via_g(1, [0, 0], 1j), F12_ZERO_AT_I) < 1e-10

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (3, 1), (2, 3)])
    def test_cross_form(self, m, n, rng):
        for _ in range(10):
            ys = rng.ys(n, 0.5)
            tau = rng.tau(((-0.5, 0.5), (0.8, 2.0)))
            a = f_mn_series(m, ys, tau, 12)
            b = f_mn_via_g(m, ys, tau, 12)
            tails = lattice_tail_bound(m, ys, tau, 12, "F") + lattice_tail_bound(m, ys, tau, 12, "F_via_G")
            assert abs(a - b) <= tails + 1e-10 * abs(a)


class TestTailBound:
    def test_g_n1_zero(self):
        assert lattice_tail_bound(2, [0], 1j, 3, "G") == 0

    def test_g_n2_real(self):
        assert lattice_tail_bound(1, [0.3, -0.3], 1j, 8, "G") <= 8 * math.exp(-64 * math.pi)

    def test_f_vanishes_as_q_to_zero(self):
        assert lattice_tail_bound(2, [0.1, -0.1], 80j, 1, "F") < 1e-300

    def test_inf_when_ratio_fails(self):
        assert lattice_tail_bound(1, [5j, -5j], 0.3j, 1, "G") == math.inf

    @pytest.mark.parametrize("form", ["G", "F", "F_via_G"])
    def test_radius_growth_within_bound(self, form, rng):
        fn = {"G": g_mn, "F": f_mn_series, "F_via_G": f_mn_via_g}[form]
        for _ in range(15):
            n = 1 + int(rng.random() * 3)
            m = 1 + int(rng.random() * 2)
            ys = rng.ys(n, 0.5)
            tau = rng.tau(((-0.5, 0.5), (0.8, 2.0)))
            r = 1 + int(rng.random() * 6)
            bound = lattice_tail_bound(m, ys, tau, r, form)
            assert abs(fn(m, ys, tau, r) - fn(m, ys, tau, r + 2)) <= bound

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            lattice_tail_bound(1, [0], 1j, 1, "H")
