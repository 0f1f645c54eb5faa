"""
Nome powers, the four Jacobi theta functions and a sparse Fourier-series
type in ``w = exp(iz)``.

Conventions
-----------
``q = exp(2*pi*i*tau)`` and every power ``q**alpha`` is evaluated as
``exp(2*pi*i*tau*alpha)``; no principal roots of the numeric nome are taken.

    theta_1(z|tau) = -i q^(1/8) sum (-1)^n q^(n(n+1)/2) e^((2n+1)iz)
    theta_2(z|tau) =    q^(1/8) sum        q^(n(n+1)/2) e^((2n+1)iz)
    theta_3(z|tau) =            sum        q^(n^2/2)    e^(2niz)
    theta_4(z|tau) =            sum (-1)^n q^(n^2/2)    e^(2niz)

Truncated sums keep ``|n| <= n_max`` for theta_3/theta_4 and
``n in [-n_max-1, n_max]`` for theta_1/theta_2, so that the odd exponents
``2n+1`` are symmetric. Terms are accumulated from the centre outwards; a
sum at ``n_max`` is therefore an exact prefix of the sum at any larger
``n_max``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Iterable, Iterator, Mapping

TWO_PI_I = 2j * math.pi


def _check_finite(value: complex, name: str) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class TauParam:
    """Point of the upper half-plane."""

    tau: complex

    def __post_init__(self):
        tau = _check_finite(self.tau, "tau")
        if not tau.imag > 0:
            raise ValueError(f"Im(tau) must be positive, got tau={tau!r}")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def coerce(cls, tau: "TauParam | complex") -> "TauParam":
        return tau if isinstance(tau, cls) else cls(tau)

    @property
    def q(self) -> complex:
        return nome(self)

    @property
    def q_abs(self) -> float:
        return math.exp(-2.0 * math.pi * self.tau.imag)

    def __complex__(self) -> complex:
        return self.tau


class ThetaKind(enum.IntEnum):
    THETA1 = 1
    THETA2 = 2
    THETA3 = 3
    THETA4 = 4


def nome(tau: TauParam | complex) -> complex:
    """Return ``q = exp(2*pi*i*tau)``."""
    tau = TauParam.coerce(tau)
    return cmath.exp(TWO_PI_I * tau.tau)


def q_pow(tau: TauParam | complex, alpha: Fraction | Number) -> complex:
    """
    Return ``q**alpha`` as ``exp(2*pi*i*tau*alpha)``.

    ``alpha`` is normally an exact ``Fraction`` or ``int``; floats and
    complex exponents are accepted for parameter-dependent powers such as
    ``q**(-sum(y**2)/(2*m*m*n))``.
    """
    tau = TauParam.coerce(tau)
    if isinstance(alpha, Fraction):
        alpha = alpha.numerator / alpha.denominator
    return cmath.exp(TWO_PI_I * tau.tau * alpha)


def _check_n_max(n_max: int) -> int:
    if isinstance(n_max, bool) or int(n_max) != n_max or n_max < 0:
        raise ValueError(f"n_max must be a nonnegative integer, got {n_max!r}")
    return int(n_max)


def _theta_terms(kind: ThetaKind, n_max: int) -> Iterator[tuple[Fraction, int, complex]]:
    """
    Yield ``(alpha, b, c)`` for each retained term ``c * q**alpha * e^(ibz)``,
    centre first.
    """
    kind = ThetaKind(kind)
    if kind in (ThetaKind.THETA3, ThetaKind.THETA4):
        alt = kind is ThetaKind.THETA4
        yield Fraction(0), 0, 1.0
        for n in range(1, n_max + 1):
            sign = -1.0 if (alt and n % 2) else 1.0
            alpha = Fraction(n * n, 2)
            yield alpha, 2 * n, sign
            yield alpha, -2 * n, sign
    else:
        # (n, -1-n) share q^(n(n+1)/2); the -i of theta_1 is folded into c.
        odd = kind is ThetaKind.THETA1
        for n in range(0, n_max + 1):
            alpha = Fraction(1, 8) + Fraction(n * (n + 1), 2)
            if odd:
                c_pos = -1j if n % 2 == 0 else 1j
                yield alpha, 2 * n + 1, c_pos
                yield alpha, -2 * n - 1, -c_pos
            else:
                yield alpha, 2 * n + 1, 1.0
                yield alpha, -2 * n - 1, 1.0


def _term(tau: complex, alpha: Fraction, b: int, z: complex) -> complex:
    # one exp per term: q^alpha and e^(ibz) may overflow separately
    return cmath.exp(TWO_PI_I * tau * (alpha.numerator / alpha.denominator) + 1j * b * z)


def theta(kind: ThetaKind | int, z: complex, tau: TauParam | complex, n_max: int = 24) -> complex:
    """
    Truncated Jacobi theta function ``theta_kind(z|tau)``.

    Parameters
    ----------
    kind : ThetaKind or int
        Which of theta_1 .. theta_4.
    z : complex
        Argument; must be finite.
    tau : TauParam or complex
        Modular parameter, ``Im(tau) > 0``.
    n_max : int
        Truncation index (see module docstring for the index ranges).

    Returns
    -------
    complex
        The truncated series. Use :func:`theta_tail_bound` to certify it.
    """
    z = _check_finite(z, "z")
    tau = TauParam.coerce(tau).tau
    n_max = _check_n_max(n_max)
    total = 0j
    for alpha, b, c in _theta_terms(kind, n_max):
        total += c * _term(tau, alpha, b, z)
    return total


def _theta_term_abs(kind: ThetaKind, n: int, log_q: float, y: float) -> float:
    """Magnitude bound of index ``n >= 0`` (and its mirror) with ``y = |Im z|``.

    Takes ``log|q|`` rather than ``|q|`` so very large ``Im(tau)`` cannot
    underflow to ``log(0)``.
    """
    if kind in (ThetaKind.THETA3, ThetaKind.THETA4):
        log_mag = 0.5 * n * n * log_q + 2.0 * n * y
    else:
        log_mag = (0.125 + 0.5 * n * (n + 1)) * log_q + (2 * n + 1) * y
    return math.exp(log_mag)


def theta_tail_bound(
    kind: ThetaKind | int, z: complex, tau: TauParam | complex, n_max: int = 24
) -> float:
    """
    Upper bound on ``|theta_kind(z|tau) - theta(kind, z, tau, n_max)|``.

    The omitted terms on each side are dominated by a geometric series once
    the term-to-term ratio is at most 1/2, giving ``4 * (first omitted
    term)``. If the ratio at ``n_max`` exceeds 1/2 the bound is ``inf``.
    """
    kind = ThetaKind(kind)
    z = _check_finite(z, "z")
    tau = TauParam.coerce(tau)
    n_max = _check_n_max(n_max)
    y = abs(z.imag)
    log_q = -2.0 * math.pi * tau.tau.imag
    if kind in (ThetaKind.THETA3, ThetaKind.THETA4):
        log_ratio = (2 * n_max + 1) / 2 * log_q + 2.0 * y
    else:
        log_ratio = (n_max + 1) * log_q + 2.0 * y
    if log_ratio > -math.log(2.0):
        return math.inf
    return 4.0 * _theta_term_abs(kind, n_max + 1, log_q, y)


class ZSeries(Mapping[int, complex]):
    """
    Finite Fourier series ``sum_b c_b * exp(i*b*z)`` stored sparsely.

    Behaves as a read-only mapping from exponent ``b`` to coefficient.
    Coefficients that are exactly zero are dropped; nothing else is pruned.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[int, complex] = {}
        for b, c in items:
            if int(b) != b:
                raise ValueError(f"exponent must be an integer, got {b!r}")
            clean[int(b)] = clean.get(int(b), 0j) + complex(c)
        self._coeffs = {b: c for b, c in sorted(clean.items()) if c != 0}

    def __getitem__(self, b: int) -> complex:
        return self._coeffs[b]

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __repr__(self) -> str:
        return f"ZSeries({self._coeffs!r})"

    def coeff(self, b: int) -> complex:
        return self._coeffs.get(b, 0j)

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        return sum((c * cmath.exp(1j * b * z) for b, c in self._coeffs.items()), 0j)

    evaluate = __call__

    def __add__(self, other: "ZSeries") -> "ZSeries":
        return zseries_add(self, other)

    def __mul__(self, other: "ZSeries") -> "ZSeries":
        return zseries_mul(self, other)

    def __eq__(self, other):
        if isinstance(other, ZSeries):
            return self._coeffs == other._coeffs
        return NotImplemented

    __hash__ = None


def zseries_mul(a: ZSeries, b: ZSeries) -> ZSeries:
    """Exact coefficient convolution."""
    out: dict[int, complex] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = out.get(e, 0j) + ca * cb
    return ZSeries(out)


def zseries_add(a: ZSeries, b: ZSeries) -> ZSeries:
    out = dict(a.items())
    for e, c in b.items():
        out[e] = out.get(e, 0j) + c
    return ZSeries(out)


def zseries_scale(a: ZSeries, c: complex = 1.0, exp_shift: int = 0) -> ZSeries:
    """Return ``c * exp(i*exp_shift*z) * a(z)``."""
    return ZSeries({e + exp_shift: c * v for e, v in a.items()})


def theta_zseries(
    kind: ThetaKind | int,
    shift: complex,
    scale: int,
    tau_inner: TauParam | complex,
    n_max: int = 24,
) -> ZSeries:
    """
    Fourier series in ``z`` of ``theta_kind(scale*z + shift | tau_inner)``.

    The term with exponent ``b`` in the theta series lands on key
    ``b * scale`` with coefficient ``q_inner**alpha * exp(i*b*shift)``.
    """
    shift = _check_finite(shift, "shift")
    if isinstance(scale, bool) or int(scale) != scale or scale < 1:
        raise ValueError(f"scale must be a positive integer, got {scale!r}")
    tau = TauParam.coerce(tau_inner).tau
    n_max = _check_n_max(n_max)
    return ZSeries(
        (b * int(scale), c * _term(tau, alpha, b, shift))
        for alpha, b, c in _theta_terms(kind, n_max)
    )
