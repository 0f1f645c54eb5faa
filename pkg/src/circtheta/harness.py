"""
Identity verification.

Each verifier assembles both sides of one identity, evaluates them at
sampled points (or once, for z-free identities) and, where both sides are
Fourier series in ``z``, compares them mode by mode. Truncation errors are
carried alongside every value so that a verdict is never caused by
under-truncation:

* ``fail``          error exceeds ``tol`` plus the certified truncation bound
* ``inconclusive``  the truncation bound alone exceeds ``tol``
* ``pass``          otherwise
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import cubic
from .lattice import (
    YTuple,
    box_points,
    f_mn_series,
    f_mn_via_g,
    g_mn,
    lattice_tail_bound,
    radius_for,
)
from .numeric_core import (
    TWO_PI_I,
    TauParam,
    ZSeries,
    q_pow,
    theta,
    theta_tail_bound,
    theta_zseries,
    zseries_add,
    zseries_mul,
    zseries_scale,
)
from .sampling import SamplePlan

TINY = 1e-30
SQRT3 = math.sqrt(3.0)
# Radius is grown until the lattice tail is this fraction of the tolerance.
TAIL_FRACTION = 1e-3


class IdentityId(str, enum.Enum):
    CIRCULAR_1_1 = "CIRCULAR_1_1"
    DUAL_2_1 = "DUAL_2_1"
    F_CONSISTENCY_2_2_2_3 = "F_CONSISTENCY_2_2_2_3"
    THM12_REPARAM = "THM12_REPARAM"
    G_TRANSFORM_3_1 = "G_TRANSFORM_3_1"
    G13_TRANSFORM = "G13_TRANSFORM"
    CUBIC_B_REL = "CUBIC_B_REL"
    CUBIC_C_REL = "CUBIC_C_REL"
    G13_EQUALS_A = "G13_EQUALS_A"
    PROP_A_TRANSFORM = "PROP_A_TRANSFORM"
    PROP_C_TRANSFORM = "PROP_C_TRANSFORM"
    COUNTEREXAMPLE_1_4 = "COUNTEREXAMPLE_1_4"
    DECOMPOSITION = "DECOMPOSITION"


@dataclass(frozen=True)
class SampleRecord:
    z: complex | None
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    ratio: float | None = None


@dataclass(frozen=True)
class ModeRecord:
    mode: int
    lhs: complex
    rhs: complex
    abs_diff: float


@dataclass
class VerificationReport:
    identity: IdentityId
    m: int
    n: int
    tau: complex
    ys: tuple[complex, ...]
    n_max: int
    r_max: int
    theta_tail: float
    lattice_tail: float
    samples: list[SampleRecord]
    max_rel_err: float
    tolerance: float
    verdict: str
    fourier: list[ModeRecord] | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        """JSON-ready dict; complex numbers become ``[re, im]``, inf becomes ``None``."""

        def cx(v):
            return None if v is None else [float(v.real), float(v.imag)]

        def fl(v):
            return float(v) if math.isfinite(v) else None

        samples = []
        for s in self.samples:
            rec = {
                "z": cx(s.z),
                "lhs": cx(s.lhs),
                "rhs": cx(s.rhs),
                "abs_err": fl(s.abs_err),
                "rel_err": fl(s.rel_err),
            }
            if s.ratio is not None:
                rec["ratio"] = fl(s.ratio)
            samples.append(rec)
        fourier = None
        if self.fourier is not None:
            fourier = [
                {"mode": f.mode, "lhs": cx(f.lhs), "rhs": cx(f.rhs), "abs_diff": fl(f.abs_diff)}
                for f in self.fourier
            ]
        return {
            "identity": self.identity.value,
            "params": {
                "m": self.m,
                "n": self.n,
                "tau": cx(self.tau),
                "ys": [cx(y) for y in self.ys],
            },
            "truncation": {
                "n_max": self.n_max,
                "r_max": self.r_max,
                "theta_tail": fl(self.theta_tail),
                "lattice_tail": fl(self.lattice_tail),
            },
            "samples": samples,
            "max_rel_err": fl(self.max_rel_err),
            "tolerance": fl(self.tolerance),
            "verdict": self.verdict,
            "fourier": fourier,
        }


# -- error-carrying values --------------------------------------------------


@dataclass(frozen=True)
class _Ball:
    """A value with an absolute error radius."""

    v: complex
    e: float = 0.0

    def __add__(self, other: "_Ball") -> "_Ball":
        return _Ball(self.v + other.v, self.e + other.e)

    def __mul__(self, other: "_Ball | complex") -> "_Ball":
        if not isinstance(other, _Ball):
            return _Ball(self.v * other, self.e * abs(other))
        a, b = abs(self.v), abs(other.v)
        return _Ball(self.v * other.v, a * other.e + b * self.e + self.e * other.e)

    __rmul__ = __mul__


_ZERO = _Ball(0j)


def _theta3(z: complex, tau, n_max: int) -> _Ball:
    return _Ball(theta(3, z, tau, n_max), theta_tail_bound(3, z, tau, n_max))


def _theta(kind, z: complex, tau, n_max: int) -> _Ball:
    return _Ball(theta(kind, z, tau, n_max), theta_tail_bound(kind, z, tau, n_max))


def _record(z, lhs: _Ball, rhs: _Ball) -> tuple[SampleRecord, float]:
    diff = abs(lhs.v - rhs.v)
    denom = max(abs(lhs.v), abs(rhs.v), TINY)
    return SampleRecord(z, lhs.v, rhs.v, diff, diff / denom), (lhs.e + rhs.e) / denom


def _verdict(max_rel: float, tail_rel: float, tol: float, fourier_ok: bool = True) -> str:
    if max_rel > tol + tail_rel or not fourier_ok:
        return "fail"
    if tail_rel > tol:
        return "inconclusive"
    return "pass"


def _finish(
    identity: IdentityId,
    *,
    m: int,
    ys: Sequence[complex],
    tau: TauParam,
    records: list[tuple[SampleRecord, float]],
    tol: float,
    n_max: int = 0,
    r_max: int = 0,
    theta_tail: float = 0.0,
    lattice_tail: float = 0.0,
    fourier: list[ModeRecord] | None = None,
) -> VerificationReport:
    samples = [r for r, _ in records]
    tail_rel = max(t for _, t in records)
    max_rel = max(s.rel_err for s in samples)
    fourier_ok = True
    if fourier is not None:
        scale = max([1.0] + [max(abs(f.lhs), abs(f.rhs)) for f in fourier])
        fourier_ok = all(f.abs_diff <= tol * scale for f in fourier)
    verdict = _verdict(max_rel, tail_rel, tol, fourier_ok)
    return VerificationReport(
        identity=identity,
        m=m,
        n=len(ys),
        tau=tau.tau,
        ys=tuple(complex(y) for y in ys),
        n_max=n_max,
        r_max=r_max,
        theta_tail=theta_tail,
        lattice_tail=lattice_tail,
        samples=samples,
        max_rel_err=max_rel,
        tolerance=tol + tail_rel if math.isfinite(tail_rel) else tol,
        verdict=verdict,
        fourier=fourier,
    )


def _lattice_value(
    compute: Callable[[int], complex], bound: Callable[[int], float], r_max: int, tol: float
) -> tuple[_Ball, int]:
    """Evaluate a lattice sum, growing the radius from ``r_max`` until its tail is small."""
    value = compute(r_max)
    target = TAIL_FRACTION * tol * max(abs(value), TINY)
    r = radius_for(bound, target, r_max)
    if r != r_max:
        value = compute(r)
    return _Ball(value, bound(r)), r


def _zs(plan: SamplePlan | None, zs: Sequence[complex] | None) -> list[complex]:
    if zs is not None:
        return [complex(z) for z in zs]
    return (plan or SamplePlan()).z_samples()


# -- Fourier comparison -----------------------------------------------------


def fourier_compare(lhs: ZSeries, rhs: ZSeries, mode_window: int) -> list[ModeRecord]:
    """Per-mode table for ``|mode| <= mode_window``; absent modes count as zero."""
    out = []
    for b in range(-mode_window, mode_window + 1):
        a, c = lhs.coeff(b), rhs.coeff(b)
        out.append(ModeRecord(b, a, c, abs(a - c)))
    return out


def circular_lhs_series(m: int, ys: YTuple, tau: TauParam, n_max: int) -> ZSeries:
    """``sum_k prod_j theta_3(z + y_j + k pi/(mn) | tau)`` as a series in ``z``."""
    n = ys.n
    total = ZSeries()
    for k in range(m * n):
        prod = ZSeries({0: 1.0})
        for y in ys:
            prod = zseries_mul(prod, theta_zseries(3, y + k * math.pi / (m * n), 1, tau, n_max))
        total = zseries_add(total, prod)
    return total


def dual_lhs_series(m: int, ys: YTuple, tau: TauParam, n_max: int) -> ZSeries:
    """``sum_k q^(k^2/2) e^(2kiz) prod_j theta_3(mz + y_j + k m pi tau | m^2 n tau)``."""
    n = ys.n
    t = tau.tau
    inner = TauParam(m * m * n * t)
    total = ZSeries()
    for k in range(m * n):
        prod = ZSeries({0: 1.0})
        for y in ys:
            prod = zseries_mul(prod, theta_zseries(3, y + k * m * math.pi * t, m, inner, n_max))
        total = zseries_add(total, zseries_scale(prod, q_pow(tau, k * k / 2), 2 * k))
    return total


# -- summation identities ------------------------------------------------


def verify_circular(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    plan: SamplePlan | None = None,
    n_max: int = 24,
    r_max: int = 12,
    tol: float = 1e-9,
    *,
    zs: Sequence[complex] | None = None,
) -> VerificationReport:
    """
    Circular summation:
    ``sum_{k<mn} prod_j theta_3(z + y_j + k pi/(mn) | tau) = G_{m,n}(y|tau) theta_3(mnz | m^2 n tau)``.
    """
    ys = YTuple.coerce(ys)
    tau = TauParam.coerce(tau)
    n = ys.n
    mn = m * n
    G, r = _lattice_value(
        lambda r: g_mn(m, ys, tau, r),
        lambda r: lattice_tail_bound(m, ys, tau, r, "G"),
        r_max,
        tol,
    )
    big_tau = TauParam(m * mn * tau.tau)
    records, theta_tail = [], 0.0
    for z in _zs(plan, zs):
        lhs = _ZERO
        for k in range(mn):
            prod = _Ball(1.0)
            for y in ys:
                prod = prod * _theta3(z + y + k * math.pi / mn, tau, n_max)
            lhs = lhs + prod
        th = _theta3(mn * z, big_tau, n_max)
        theta_tail = max(theta_tail, lhs.e, th.e)
        records.append(_record(z, lhs, G * th))
    lhs_series = circular_lhs_series(m, ys, tau, n_max)
    rhs_series = zseries_scale(theta_zseries(3, 0, mn, big_tau, n_max), G.v)
    fourier = fourier_compare(lhs_series, rhs_series, 6 * mn)
    return _finish(
        IdentityId.CIRCULAR_1_1, m=m, ys=ys.ys, tau=tau, records=records, tol=tol,
        n_max=n_max, r_max=r, theta_tail=theta_tail, lattice_tail=G.e, fourier=fourier,
    )


def verify_dual(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    plan: SamplePlan | None = None,
    n_max: int = 24,
    r_max: int = 12,
    tol: float = 1e-9,
    *,
    zs: Sequence[complex] | None = None,
) -> VerificationReport:
    """
    Dual circular summation with the corrected ``F_{m,n}``:
    ``sum_{k<mn} q^(k^2/2) e^(2kiz) prod_j theta_3(mz + y_j + k m pi tau | m^2 n tau)
    = F_{m,n}(y|tau) theta_3(z|tau)``.
    """
    ys = YTuple.coerce(ys)
    tau = TauParam.coerce(tau)
    n = ys.n
    t = tau.tau
    F, r = _lattice_value(
        lambda r: f_mn_series(m, ys, tau, r),
        lambda r: lattice_tail_bound(m, ys, tau, r, "F"),
        r_max,
        tol,
    )
    inner = TauParam(m * m * n * t)
    records, theta_tail = [], 0.0
    for z in _zs(plan, zs):
        lhs = _ZERO
        for k in range(m * n):
            prod = _Ball(cmath.exp(TWO_PI_I * t * (k * k / 2) + 2j * k * z))
            for y in ys:
                prod = prod * _theta3(m * z + y + k * m * math.pi * t, inner, n_max)
            lhs = lhs + prod
        th = _theta3(z, tau, n_max)
        theta_tail = max(theta_tail, lhs.e, th.e)
        records.append(_record(z, lhs, F * th))
    lhs_series = dual_lhs_series(m, ys, tau, n_max)
    rhs_series = zseries_scale(theta_zseries(3, 0, 1, tau, n_max), F.v)
    fourier = fourier_compare(lhs_series, rhs_series, 6 * m * n)
    return _finish(
        IdentityId.DUAL_2_1, m=m, ys=ys.ys, tau=tau, records=records, tol=tol,
        n_max=n_max, r_max=r, theta_tail=theta_tail, lattice_tail=F.e, fourier=fourier,
    )


def verify_f_consistency(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    r_max: int = 12,
    tol: float = 1e-9,
) -> VerificationReport:
    """The two closed forms of ``F_{m,n}`` (direct series and via transformed ``G``) agree."""
    ys = YTuple.coerce(ys)
    tau = TauParam.coerce(tau)
    series, r1 = _lattice_value(
        lambda r: f_mn_series(m, ys, tau, r),
        lambda r: lattice_tail_bound(m, ys, tau, r, "F"),
        r_max,
        tol,
    )
    via_g, r2 = _lattice_value(
        lambda r: f_mn_via_g(m, ys, tau, r),
        lambda r: lattice_tail_bound(m, ys, tau, r, "F_via_G"),
        r_max,
        tol,
    )
    return _finish(
        IdentityId.F_CONSISTENCY_2_2_2_3, m=m, ys=ys.ys, tau=tau,
        records=[_record(None, series, via_g)], tol=tol,
        r_max=max(r1, r2), lattice_tail=series.e + via_g.e,
    )


def _g_transformed_pref(m: int, n: int, t: complex) -> complex:
    big = m * m * n
    return (-1j * t) ** ((1 - n) / 2) / big ** (n / 2)


def verify_thm12_reparam(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    r_max: int = 12,
    tol: float = 1e-10,
) -> VerificationReport:
    """
    ``F`` in the ``theta_3(mz + (y_j + km) pi tau | m^2 n tau)`` parametrization.

    Substituting ``y_j -> pi tau y_j`` into the transformed-``G`` form must give
    ``q^(-|y|^2/(2 m^2 n)) (-i tau)^((1-n)/2) (m^2 n)^(-n/2) G(pi y/(m^2 n) | -1/(m^2 n tau))``.
    """
    ys = YTuple.coerce(ys)
    tau = TauParam.coerce(tau)
    n = ys.n
    t = tau.tau
    big = m * m * n
    scaled = YTuple(tuple(math.pi * t * y for y in ys))
    lhs, r1 = _lattice_value(
        lambda r: f_mn_via_g(m, scaled, tau, r),
        lambda r: lattice_tail_bound(m, scaled, tau, r, "F_via_G"),
        r_max,
        tol,
    )
    pref = q_pow(tau, -sum(y * y for y in ys) / (2 * big)) * _g_transformed_pref(m, n, t)
    args = YTuple(tuple(math.pi * y / big for y in ys))
    tau_t = TauParam(-1.0 / (big * t))
    g, r2 = _lattice_value(
        lambda r: g_mn(m, args, tau_t, r),
        lambda r: lattice_tail_bound(m, args, tau_t, r, "G"),
        r_max,
        tol,
    )
    return _finish(
        IdentityId.THM12_REPARAM, m=m, ys=ys.ys, tau=tau,
        records=[_record(None, lhs, g * pref)], tol=tol,
        r_max=max(r1, r2), lattice_tail=lhs.e + g.e * abs(pref),
    )


def verify_g_transform(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    r_max: int = 12,
    tol: float = 1e-9,
) -> VerificationReport:
    """``G_{m,n}(y/(m^2 n tau) | -1/(m^2 n tau))`` against its expansion in ``q``."""
    ys = YTuple.coerce(ys)
    tau = TauParam.coerce(tau)
    n = ys.n
    t = tau.tau
    big = m * m * n
    args = YTuple(tuple(y / (big * t) for y in ys))
    tau_t = TauParam(-1.0 / (big * t))
    lhs, r1 = _lattice_value(
        lambda r: g_mn(m, args, tau_t, r),
        lambda r: lattice_tail_bound(m, args, tau_t, r, "G"),
        r_max,
        tol,
    )
    series, r2 = _lattice_value(
        lambda r: f_mn_series(m, ys, tau, r),
        lambda r: lattice_tail_bound(m, ys, tau, r, "F"),
        r_max,
        tol,
    )
    pref = big ** (n / 2) / (-1j * t) ** ((1 - n) / 2)
    pref *= cmath.exp(sum(y * y for y in ys) * 1j / (big * math.pi * t))
    return _finish(
        IdentityId.G_TRANSFORM_3_1, m=m, ys=ys.ys, tau=tau,
        records=[_record(None, lhs, series * pref)], tol=tol,
        r_max=max(r1, r2), lattice_tail=lhs.e + series.e * abs(pref),
    )


# -- cubic identities -------------------------------------------------------


def _hex_sum(u: complex, v: complex, t: complex, shifted: bool, r_max: int) -> complex:
    """``sum q^(Q(r1,r2) [+ r1 + r2 + 1/3]) e^(2i r1 u + 2i r2 v)`` written out directly."""
    total = 0j
    for r1, r2 in box_points(2, r_max):
        e = r1 * r1 + r2 * r2 + r1 * r2
        if shifted:
            e += r1 + r2 + 1.0 / 3.0
        total += cmath.exp(TWO_PI_I * t * e + 2j * (r1 * u + r2 * v))
    return total


def _g13_prefactor(x: complex, y: complex, t: complex) -> complex:
    return -SQRT3 * 1j * t * cmath.exp(2j * (x * x + y * y + x * y) / (math.pi * t))


def _cubic_ball(which: str, x, y, tau, r_max: int, tol: float) -> tuple[_Ball, int]:
    fn = {"a": cubic.a_cubic, "b": cubic.b_cubic, "c": cubic.c_cubic}[which]
    return _lattice_value(
        lambda r: fn(x, y, tau, r),
        lambda r: cubic.cubic_tail_bound(which, x, y, tau, r),
        r_max,
        tol,
    )


def g13_transform_rhs(y1: complex, y2: complex, tau: TauParam | complex, r_max: int = 12) -> complex:
    """
    Three-bracket expansion of ``G_{1,3}(y1/tau, y2/tau, -(y1+y2)/tau | -1/tau)``,
    evaluated with its own double sums (no cubic-module calls).
    """
    t = TauParam.coerce(tau).tau
    u = 2 * y1 + y2
    v = y1 + 2 * y2
    s0 = _hex_sum(u, v, t, False, r_max)
    s_plus = _hex_sum(u, v, t, True, r_max)
    s_minus = _hex_sum(-u, -v, t, True, r_max)
    e = cmath.exp(2j * (y1 + y2))
    return _g13_prefactor(y1, y2, t) * (s0 + e * s_plus + s_minus / e)


def verify_g13_transform(
    y1: complex, y2: complex, tau: TauParam | complex, r_max: int = 12, tol: float = 1e-9
) -> VerificationReport:
    tau = TauParam.coerce(tau)
    t = tau.tau
    args = YTuple((y1 / t, y2 / t, (-y1 - y2) / t))
    tau_t = TauParam(-1.0 / t)
    lhs, r1 = _lattice_value(
        lambda r: g_mn(1, args, tau_t, r),
        lambda r: lattice_tail_bound(1, args, tau_t, r, "G"),
        r_max,
        tol,
    )
    pref = _g13_prefactor(y1, y2, t)
    e = abs(cmath.exp(2j * (y1 + y2)))

    def rhs_tail(r):
        return abs(pref) * (
            cubic.cubic_tail_bound("a", y1, y2, tau, r)
            + e * cubic.cubic_tail_bound("c", y1, y2, tau, r)
            + cubic.cubic_tail_bound("c", -y1, -y2, tau, r) / e
        )

    rhs, r2 = _lattice_value(lambda r: g13_transform_rhs(y1, y2, tau, r), rhs_tail, r_max, tol)
    return _finish(
        IdentityId.G13_TRANSFORM, m=1, ys=args_of(y1, y2), tau=tau,
        records=[_record(None, lhs, rhs)], tol=tol,
        r_max=max(r1, r2), lattice_tail=lhs.e + rhs.e,
    )


def args_of(x: complex, y: complex) -> tuple[complex, complex, complex]:
    return (complex(x), complex(y), -complex(x) - complex(y))


def verify_cubic_b_rel(
    x: complex, y: complex, tau: TauParam | complex, r_max: int = 12, tol: float = 1e-9
) -> VerificationReport:
    """``b(x, y | tau) = a(x, y + pi/3 | tau)``."""
    tau = TauParam.coerce(tau)
    b, r1 = _cubic_ball("b", x, y, tau, r_max, tol)
    a, r2 = _cubic_ball("a", x, y + math.pi / 3, tau, r_max, tol)
    return _finish(
        IdentityId.CUBIC_B_REL, m=1, ys=args_of(x, y), tau=tau,
        records=[_record(None, b, a)], tol=tol, r_max=max(r1, r2), lattice_tail=a.e + b.e,
    )


def verify_cubic_c_rel(
    x: complex, y: complex, tau: TauParam | complex, r_max: int = 12, tol: float = 1e-9
) -> VerificationReport:
    """``c(x, y | tau) = q^(1/3) a(x + pi tau/3, y + pi tau/3 | tau)``."""
    tau = TauParam.coerce(tau)
    shift = math.pi * tau.tau / 3
    c, r1 = _cubic_ball("c", x, y, tau, r_max, tol)
    a, r2 = _cubic_ball("a", x + shift, y + shift, tau, r_max, tol)
    rhs = a * q_pow(tau, 1 / 3)
    return _finish(
        IdentityId.CUBIC_C_REL, m=1, ys=args_of(x, y), tau=tau,
        records=[_record(None, c, rhs)], tol=tol, r_max=max(r1, r2), lattice_tail=c.e + rhs.e,
    )


def verify_g13_equals_a(
    x: complex,
    y: complex,
    tau: TauParam | complex,
    r_max: int = 12,
    tol: float = 1e-9,
    *,
    corrected: bool = False,
) -> VerificationReport:
    """
    ``G_{1,3}(x, y, -x-y | tau) = a(x, y | tau)`` as stated.

    ``G_{m,n}`` carries the factor ``mn``, so the equality actually holds as
    ``G_{1,3} = 3 a``; ``corrected=True`` checks that form instead.
    """
    tau = TauParam.coerce(tau)
    ys = args_of(x, y)
    g, r1 = _lattice_value(
        lambda r: g_mn(1, ys, tau, r),
        lambda r: lattice_tail_bound(1, ys, tau, r, "G"),
        r_max,
        tol,
    )
    a, r2 = _cubic_ball("a", x, y, tau, r_max, tol)
    if corrected:
        a = a * 3.0
    return _finish(
        IdentityId.G13_EQUALS_A, m=1, ys=ys, tau=tau,
        records=[_record(None, g, a)], tol=tol, r_max=max(r1, r2), lattice_tail=g.e + a.e,
    )


def _prop_bracket(x, y, tau: TauParam, r_max: int, tol: float, twist: bool) -> tuple[_Ball, int]:
    e = cmath.exp(2j * (x + y))
    a, r1 = _cubic_ball("a", x, y, tau, r_max, tol)
    cp, r2 = _cubic_ball("c", x, y, tau, r_max, tol)
    cm, r3 = _cubic_ball("c", -x, -y, tau, r_max, tol)
    w1, w2 = (cubic.OMEGA, cubic.OMEGA**2) if twist else (1.0, 1.0)
    return a + cp * (w1 * e) + cm * (w2 / e), max(r1, r2, r3)


def _prop_constant(corrected: bool) -> float:
    # as stated: -sqrt(3) i tau; consistent with G_{1,3} = 3a: -i tau/sqrt(3)
    return -1.0 / SQRT3 if corrected else -SQRT3


def _prop_a_rhs(x, y, tau: TauParam, r_max: int, tol: float, corrected: bool) -> tuple[_Ball, int]:
    t = tau.tau
    bracket, r = _prop_bracket(x, y, tau, r_max, tol, twist=False)
    pref = _prop_constant(corrected) * 1j * t * cmath.exp(2j * (x * x + y * y + x * y) / (math.pi * t))
    return bracket * pref, r


def prop_a_rhs(x, y, tau, r_max: int = 12, *, corrected: bool = False) -> complex:
    """Right side of the ``a`` transformation display, built from ``a`` and ``c``."""
    return _prop_a_rhs(x, y, TauParam.coerce(tau), r_max, 1e-9, corrected)[0].v


def verify_prop_a(
    x: complex,
    y: complex,
    tau: TauParam | complex,
    r_max: int = 12,
    tol: float = 1e-9,
    *,
    corrected: bool = False,
) -> VerificationReport:
    """
    ``a(x/tau, y/tau | -1/tau) = -sqrt(3) i tau e^(2i(x^2+y^2+xy)/(pi tau))
    [a(x,y) + e^(2i(x+y)) c(x,y) + e^(-2i(x+y)) c(-x,-y)]``.

    ``corrected=True`` uses the constant ``-i tau/sqrt(3)`` instead.
    """
    tau = TauParam.coerce(tau)
    t = tau.tau
    lhs, r1 = _cubic_ball("a", x / t, y / t, TauParam(-1.0 / t), r_max, tol)
    rhs, r2 = _prop_a_rhs(x, y, tau, r_max, tol, corrected)
    return _finish(
        IdentityId.PROP_A_TRANSFORM, m=1, ys=args_of(x, y), tau=tau,
        records=[_record(None, lhs, rhs)], tol=tol, r_max=max(r1, r2), lattice_tail=lhs.e + rhs.e,
    )


def verify_prop_c(
    x: complex,
    y: complex,
    tau: TauParam | complex,
    r_max: int = 12,
    tol: float = 1e-9,
    *,
    corrected: bool = False,
) -> VerificationReport:
    """
    ``c(x/tau, y/tau | -1/tau) = -sqrt(3) i tau e^(2i(x^2+y^2+xy)/(pi tau) - 2i(x+y)/tau)
    [a(x,y) + w e^(2i(x+y)) c(x,y) + w^2 e^(-2i(x+y)) c(-x,-y)]``.
    """
    tau = TauParam.coerce(tau)
    t = tau.tau
    lhs, r1 = _cubic_ball("c", x / t, y / t, TauParam(-1.0 / t), r_max, tol)
    bracket, r2 = _prop_bracket(x, y, tau, r_max, tol, twist=True)
    pref = _prop_constant(corrected) * 1j * t * cmath.exp(
        2j * (x * x + y * y + x * y) / (math.pi * t) - 2j * (x + y) / t
    )
    rhs = bracket * pref
    return _finish(
        IdentityId.PROP_C_TRANSFORM, m=1, ys=args_of(x, y), tau=tau,
        records=[_record(None, lhs, rhs)], tol=tol, r_max=max(r1, r2), lattice_tail=lhs.e + rhs.e,
    )


def verify_proposition(
    x: complex, y: complex, tau, r_max: int = 12, tol: float = 1e-9, *, corrected: bool = False
) -> list[VerificationReport]:
    """Both transformation displays for the cubic functions."""
    return [
        verify_prop_a(x, y, tau, r_max, tol, corrected=corrected),
        verify_prop_c(x, y, tau, r_max, tol, corrected=corrected),
    ]


# -- theta_3 decomposition and the uncorrected m=2, n=1 formula -------------


def _decomposition_parts(z: complex, tau: TauParam, n_max: int):
    tau4 = TauParam(4 * tau.tau)
    split = _theta3(2 * z, tau4, n_max) + _theta(2, 2 * z, tau4, n_max)
    return split, _theta3(z, tau, n_max)


def verify_decomposition(
    tau: TauParam | complex,
    plan: SamplePlan | None = None,
    n_max: int = 24,
    tol: float = 1e-12,
    *,
    zs: Sequence[complex] | None = None,
) -> VerificationReport:
    """``theta_3(z|tau) = theta_3(2z|4tau) + theta_2(2z|4tau)`` (even/odd index split)."""
    tau = TauParam.coerce(tau)
    records, theta_tail = [], 0.0
    for z in _zs(plan, zs):
        split, th = _decomposition_parts(z, tau, n_max)
        theta_tail = max(theta_tail, split.e, th.e)
        records.append(_record(z, split, th))
    return _finish(
        IdentityId.DECOMPOSITION, m=2, ys=(0j,), tau=tau, records=records, tol=tol,
        n_max=n_max, theta_tail=theta_tail,
    )


def demonstrate_counterexample(
    tau: TauParam | complex,
    plan: SamplePlan | None = None,
    n_max: int = 24,
    tol: float = 1e-10,
    *,
    zs: Sequence[complex] | None = None,
) -> VerificationReport:
    """
    Quantify the failure of ``theta_3(2z|4tau) + theta_2(2z|4tau) = (1+q) theta_3(z|tau)``.

    With ``R = theta_3(2z|4tau) + theta_2(2z|4tau) - (1+q) theta_3(z|tau)`` and
    ``D`` the same with ``(1+q)`` replaced by 1, the demonstration passes iff,
    relative to ``|theta_3(z|tau)|``:

    * ``|D|`` is within ``tol`` (the correct split holds),
    * ``|R + q theta_3|`` is within ``tol`` (the defect is exactly ``-q theta_3``),
    * ``|R|/|theta_3|`` equals ``|q|`` to ``tol`` (absolute).

    Samples record the correct split (``lhs``/``rhs``), the combined condition
    residual as ``rel_err`` and ``|R|/|theta_3|`` as ``ratio``.
    """
    tau = TauParam.coerce(tau)
    q = tau.q
    records, theta_tail = [], 0.0
    for z in _zs(plan, zs):
        split, th = _decomposition_parts(z, tau, n_max)
        scale = max(abs(th.v), TINY)
        big_r = split.v - (1 + q) * th.v
        d = split.v - th.v
        ratio = abs(big_r) / scale
        residual = max(abs(d) / scale, abs(big_r + q * th.v) / scale, abs(ratio - abs(q)))
        tail_rel = (split.e + (2 + abs(q)) * th.e) / scale
        theta_tail = max(theta_tail, split.e, th.e)
        rec = SampleRecord(z, split.v, th.v, abs(d), residual, ratio)
        records.append((rec, tail_rel))
    return _finish(
        IdentityId.COUNTEREXAMPLE_1_4, m=2, ys=(0j,), tau=tau, records=records, tol=tol,
        n_max=n_max, theta_tail=theta_tail,
    )


# -- registry ---------------------------------------------------------------

VERIFIERS: dict[IdentityId, Callable[..., VerificationReport]] = {
    IdentityId.CIRCULAR_1_1: verify_circular,
    IdentityId.DUAL_2_1: verify_dual,
    IdentityId.F_CONSISTENCY_2_2_2_3: verify_f_consistency,
    IdentityId.THM12_REPARAM: verify_thm12_reparam,
    IdentityId.G_TRANSFORM_3_1: verify_g_transform,
    IdentityId.G13_TRANSFORM: verify_g13_transform,
    IdentityId.CUBIC_B_REL: verify_cubic_b_rel,
    IdentityId.CUBIC_C_REL: verify_cubic_c_rel,
    IdentityId.G13_EQUALS_A: verify_g13_equals_a,
    IdentityId.PROP_A_TRANSFORM: verify_prop_a,
    IdentityId.PROP_C_TRANSFORM: verify_prop_c,
    IdentityId.COUNTEREXAMPLE_1_4: demonstrate_counterexample,
    IdentityId.DECOMPOSITION: verify_decomposition,
}

_Z_SAMPLED = {IdentityId.CIRCULAR_1_1, IdentityId.DUAL_2_1}
_MY = {IdentityId.F_CONSISTENCY_2_2_2_3, IdentityId.THM12_REPARAM, IdentityId.G_TRANSFORM_3_1}
_THETA_ONLY = {IdentityId.COUNTEREXAMPLE_1_4, IdentityId.DECOMPOSITION}
_CORRECTABLE = {IdentityId.G13_EQUALS_A, IdentityId.PROP_A_TRANSFORM, IdentityId.PROP_C_TRANSFORM}


@dataclass
class RunConfig:
    """Shared parameters for running any registered verifier."""

    m: int
    ys: YTuple
    tau: TauParam
    x: complex
    y: complex
    plan: SamplePlan = field(default_factory=SamplePlan)
    n_max: int = 24
    r_max: int = 12
    tol: float = 1e-9
    corrected: bool = False


def run_identity(identity: IdentityId, cfg: RunConfig) -> VerificationReport:
    """Dispatch ``identity`` to its verifier with the arguments it takes."""
    identity = IdentityId(identity)
    fn = VERIFIERS[identity]
    if identity in _Z_SAMPLED:
        return fn(cfg.m, cfg.ys, cfg.tau, cfg.plan, cfg.n_max, cfg.r_max, cfg.tol)
    if identity in _MY:
        return fn(cfg.m, cfg.ys, cfg.tau, cfg.r_max, cfg.tol)
    if identity in _THETA_ONLY:
        return fn(cfg.tau, cfg.plan, cfg.n_max, cfg.tol)
    if identity in _CORRECTABLE:
        return fn(cfg.x, cfg.y, cfg.tau, cfg.r_max, cfg.tol, corrected=cfg.corrected)
    return fn(cfg.x, cfg.y, cfg.tau, cfg.r_max, cfg.tol)
