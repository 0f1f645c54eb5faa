import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from circtheta.numeric_core import (
    TauParam,
    ThetaKind,
    ZSeries,
    nome,
    q_pow,
    theta,
    theta_tail_bound,
    theta_zseries,
    zseries_add,
    zseries_mul,
    zseries_scale,
)

# exp(-2 pi), exp(-pi), exp(pi) at 40 digits (mpmath)
Q_AT_I = 1.8674427317079888144e-3
EXP_MINUS_PI = 4.3213918263772249774e-2
EXP_PI = 23.140692632779269006
# pi^(1/4) / Gamma(3/4)
THETA3_0_I = 1.0864348112133080146


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class TestTauParam:
    @pytest.mark.parametrize("bad", [1.0, 1 - 0.1j, 0j, complex(0, math.nan), complex(math.inf, 1)])
    def test_rejects_outside_upper_half_plane(self, bad):
        with pytest.raises(ValueError):
            TauParam(bad)

    def test_nome_modulus_below_one(self):
        assert abs(TauParam(0.3 + 0.01j).q) < 1


class TestNome:
    def test_tau_i(self):
        assert nome(1j) == pytest.approx(Q_AT_I, rel=1e-15)

    def test_large_imaginary_part(self):
        assert abs(nome(40j)) < 1e-100

    def test_real_period(self):
        assert abs(nome(1 + 1j) - nome(1j)) < 1e-17


class TestQPow:
    def test_half(self):
        assert q_pow(1j, Fraction(1, 2)) == pytest.approx(EXP_MINUS_PI, rel=1e-15)

    def test_zero(self):
        assert q_pow(0.3 + 0.7j, 0) == 1

    def test_minus_half(self):
        assert q_pow(1j, Fraction(-1, 2)) == pytest.approx(EXP_PI, rel=1e-15)

    def test_is_exp_not_principal_root(self):
        # the principal cube root of q differs from q^(1/3) once Re(tau) moves the phase past pi
        tau = 0.9 + 0.5j
        assert abs(q_pow(tau, Fraction(1, 3)) - cmath.exp(2j * math.pi * tau / 3)) < 1e-16
        assert abs(q_pow(tau, Fraction(1, 3)) - nome(tau) ** (1 / 3)) > 1e-3


class TestTheta:
    def test_theta1_zero(self):
        assert theta(1, 0, 0.3 + 0.8j) == 0

    def test_theta3_at_i(self):
        assert theta(3, 0, 1j, 10) == pytest.approx(THETA3_0_I, rel=1e-15)

    def test_theta3_pi_periodic(self):
        z, tau = 0.3 + 0.1j, 0.2 + 0.9j
        assert rel(theta(3, z + math.pi, tau), theta(3, z, tau)) < 1e-13

    @pytest.mark.parametrize("kind", [1, 2, 3, 4])
    def test_against_mpmath(self, kind):
        z, tau = 0.37 - 0.21j, -0.15 + 0.95j
        # mpmath jtheta(n, z, nome) uses q_mp = exp(i pi tau), which is our q^(1/2)
        expected = complex(mpmath.jtheta(kind, z, mpmath.exp(1j * mpmath.pi * tau)))
        assert rel(theta(kind, z, tau), expected) < 1e-13

    def test_rejects_nonfinite_z(self):
        with pytest.raises(ValueError):
            theta(3, complex(math.inf, 0), 1j)

    def test_truncation_index_ranges(self):
        tau = 0.5j
        assert theta(3, 0, tau, 0) == 1
        # theta_2 at n_max=0 keeps n in {-1, 0}: 2 q^(1/8) cos(z)
        assert abs(theta(2, 0.4, tau, 0) - 2 * q_pow(tau, Fraction(1, 8)) * math.cos(0.4)) < 1e-16


class TestThetaTailBound:
    def test_theta3_tau_i(self):
        bound = theta_tail_bound(3, 0, 1j, 10)
        assert bound <= 4 * math.exp(-math.pi * 121)
        assert bound < 1e-164

    def test_vanishes_as_q_to_zero(self):
        assert theta_tail_bound(3, 0.4 + 0.2j, 60j, 1) < 1e-300

    def test_ratio_condition_fails(self):
        # |q|^(3/2) e^100 > 1/2
        assert math.exp(-3 * math.pi) * math.exp(100) > 0.5
        assert theta_tail_bound(3, 50j, 1j, 1) == math.inf

    def test_is_a_true_bound(self, rng):
        checked = 0
        for _ in range(100):
            kind = 1 + int(rng.random() * 4)
            z = rng.complex_in(((-3.0, 3.0), (-2.0, 2.0)))
            tau = rng.tau(((-0.5, 0.5), (0.3, 2.0)))
            n_max = 1 + int(rng.random() * 8)
            bound = theta_tail_bound(kind, z, tau, n_max)
            if math.isinf(bound):
                continue
            checked += 1
            assert abs(theta(kind, z, tau, n_max) - theta(kind, z, tau, n_max + 20)) <= bound
        assert checked >= 80


class TestZSeries:
    def test_theta3_coefficients(self):
        tau = 0.1 + 0.7j
        s = theta_zseries(3, 0, 1, tau, 1)
        assert set(s) == {-2, 0, 2}
        assert s[0] == 1
        assert abs(s[2] - q_pow(tau, Fraction(1, 2))) < 1e-16
        assert abs(s[-2] - q_pow(tau, Fraction(1, 2))) < 1e-16

    def test_theta2_scale_two(self):
        tau = 0.4j
        s = theta_zseries(2, 0, 2, tau, 0)
        assert set(s) == {-2, 2}
        for b in (-2, 2):
            assert abs(s[b] - q_pow(tau, Fraction(1, 8))) < 1e-16

    @pytest.mark.parametrize("kind", list(ThetaKind))
    def test_cross_evaluation(self, kind):
        z0, shift, scale, tau = 0.2 + 0.1j, 0.3 - 0.2j, 3, 0.1 + 1.1j
        s = theta_zseries(kind, shift, scale, tau, 24)
        assert rel(s(z0), theta(kind, scale * z0 + shift, tau, 24)) < 1e-13

    def test_identity_element(self):
        x = ZSeries({-2: 1 + 1j, 3: 0.5})
        assert zseries_mul(ZSeries({0: 1}), x) == x

    def test_scale_shifts_exponents(self):
        x = ZSeries({-2: 1 + 1j, 3: 0.5})
        assert zseries_scale(x, 1, 4) == ZSeries({2: 1 + 1j, 7: 0.5})

    def test_square_coefficient(self):
        a, b, c = 0.3 + 0.1j, 1.7, -0.4j
        x = ZSeries({-2: a, 0: b, 2: c})
        assert zseries_mul(x, x)[-2] == pytest.approx(2 * a * b)

    def test_drops_exact_zeros_only(self):
        x = ZSeries({0: 1.0, 1: 1e-300, 2: 0.0})
        assert set(x) == {0, 1}
        assert set(zseries_add(x, ZSeries({0: -1.0}))) == {1}


coeffs = st.dictionaries(
    st.integers(-6, 6),
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    max_size=6,
)
points = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)


def close(a, b, scale):
    return abs(a - b) <= 1e-12 * max(scale, 1.0)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(coeffs, coeffs, points)
def test_evaluation_commutes_with_mul(a, b, z):
    A, B = ZSeries(a), ZSeries(b)
    scale = sum(abs(c) for c in a.values()) * sum(abs(c) for c in b.values()) * math.e**12
    assert close(zseries_mul(A, B)(z), A(z) * B(z), scale)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(coeffs, coeffs, points)
def test_evaluation_commutes_with_add(a, b, z):
    A, B = ZSeries(a), ZSeries(b)
    scale = (sum(abs(c) for c in a.values()) + sum(abs(c) for c in b.values())) * math.e**6
    assert close(zseries_add(A, B)(z), A(z) + B(z), scale)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(coeffs, st.complex_numbers(max_magnitude=5, allow_nan=False), st.integers(-5, 5), points)
def test_evaluation_commutes_with_scale(a, c, k, z):
    A = ZSeries(a)
    scale = abs(c) * sum(abs(v) for v in a.values()) * math.e**12
    assert close(zseries_scale(A, c, k)(z), c * cmath.exp(1j * k * z) * A(z), scale)


@settings(max_examples=100, derandomize=True, deadline=None)
@given(
    st.sampled_from([1, 2, 3, 4]),
    st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
    st.floats(-0.5, 0.5),
    st.floats(0.8, 2.0),
)
def test_parity(kind, z, re_tau, im_tau):
    tau = complex(re_tau, im_tau)
    sign = -1 if kind == 1 else 1
    a, b = theta(kind, -z, tau), sign * theta(kind, z, tau)
    assert abs(a - b) <= 1e-12 * max(abs(a), abs(b), 1e-300)
