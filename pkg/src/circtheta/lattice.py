"""
Constrained lattice sums ``G_{m,n}`` and the two closed forms of ``F_{m,n}``.

    G_{m,n}(y|tau) = m n  sum_{r_1+...+r_n = 0} q^{|r|^2/2} e^{2i r.y}

    F_{m,n}(y|tau) = sum_{k=0}^{n-1} q^{-m^2 k^2/2}
                       sum_{r_1+...+r_n = k} q^{m^2 n |r|^2/2} e^{-2i r.y}

                   = (-i tau)^{(1-n)/2} (m^2 n)^{-n/2} exp(|y|^2/(m^2 n pi tau i))
                       G_{m,n}(y/(m^2 n tau) | -1/(m^2 n tau))

The free indices ``r_1 .. r_{n-1}`` run over ``[-r_max, r_max]`` and
``r_n`` is fixed by the constraint. Points are visited shell by shell in the
max-norm, so the partial sum at ``r_max`` is an exact prefix of the partial
sum at any larger radius.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .numeric_core import TWO_PI_I, TauParam, _check_finite

DEFAULT_WORK_BUDGET = 10**8
_HALF = math.log(0.5)


class WorkBudgetExceeded(ValueError):
    """Enumeration would exceed the configured number of summand evaluations."""


@dataclass(frozen=True)
class YTuple:
    """Shift parameters ``y_1 .. y_n`` with ``sum(y) == 0``."""

    ys: tuple[complex, ...]

    def __post_init__(self):
        ys = tuple(_check_finite(y, "y") for y in self.ys)
        if not ys:
            raise ValueError("YTuple needs at least one component")
        scale = max(1.0, max(abs(y) for y in ys))
        if abs(sum(ys)) > 1e-12 * scale:
            raise ValueError(f"components must sum to zero, got sum={sum(ys)!r}")
        object.__setattr__(self, "ys", ys)

    @classmethod
    def coerce(cls, ys: "YTuple | Sequence[complex]") -> "YTuple":
        return ys if isinstance(ys, cls) else cls(tuple(ys))

    @classmethod
    def closing(cls, free: Sequence[complex]) -> "YTuple":
        """Build ``(y_1, .., y_{n-1}, -(y_1 + .. + y_{n-1}))``."""
        free = tuple(complex(y) for y in free)
        return cls(free + (-sum(free, 0j),))

    @property
    def n(self) -> int:
        return len(self.ys)

    def __len__(self) -> int:
        return len(self.ys)

    def __iter__(self):
        return iter(self.ys)

    def __getitem__(self, i):
        return self.ys[i]


def _check_pos_int(value: int, name: str, minimum: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def shell(dim: int, s: int) -> Iterator[tuple[int, ...]]:
    """Integer points of ``Z^dim`` with max-norm exactly ``s``, in fixed order."""
    if dim == 0:
        if s == 0:
            yield ()
        return
    if s == 0:
        yield (0,) * dim
        return
    for first in (-s, s):
        for rest in _box(dim - 1, s):
            yield (first,) + rest
    for first in range(-s + 1, s):
        for rest in shell(dim - 1, s):
            yield (first,) + rest


def _box(dim: int, s: int) -> Iterator[tuple[int, ...]]:
    for t in range(s + 1):
        yield from shell(dim, t)


def box_points(dim: int, r_max: int) -> Iterator[tuple[int, ...]]:
    """All points of ``[-r_max, r_max]^dim``, shell 0 first."""
    return _box(dim, r_max)


def _check_budget(n: int, r_max: int, budget: int) -> None:
    work = n * (2 * r_max + 1) ** (n - 1)
    if work > budget:
        raise WorkBudgetExceeded(
            f"n={n}, r_max={r_max} needs {work} summands (budget {budget})"
        )


def _prepare(m, ys, tau, r_max):
    m = _check_pos_int(m, "m", 1)
    ys = YTuple.coerce(ys)
    tau = TauParam.coerce(tau)
    r_max = _check_pos_int(r_max, "r_max", 0)
    return m, ys, tau, r_max


def g_mn(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    r_max: int = 12,
    *,
    budget: int = DEFAULT_WORK_BUDGET,
) -> complex:
    """Truncated ``G_{m,n}(y_1, .., y_n | tau)``."""
    m, ys, tau, r_max = _prepare(m, ys, tau, r_max)
    n = ys.n
    _check_budget(n, r_max, budget)
    t = tau.tau
    y = ys.ys
    dy = [y[i] - y[-1] for i in range(n - 1)]
    total = 0j
    for free in box_points(n - 1, r_max):
        last = -sum(free)
        sq = sum(r * r for r in free) + last * last
        phase = sum((r * d for r, d in zip(free, dy)), 0j)
        total += cmath.exp(TWO_PI_I * t * (sq / 2) + 2j * phase)
    return m * n * total


def f_mn_series(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    r_max: int = 12,
    *,
    budget: int = DEFAULT_WORK_BUDGET,
) -> complex:
    """
    ``F_{m,n}`` from its direct q-series (the corrected closed form).

    For ``m=2, n=1`` this is exactly 1, not ``1 + q``.
    """
    m, ys, tau, r_max = _prepare(m, ys, tau, r_max)
    n = ys.n
    _check_budget(n, r_max, budget)
    t = tau.tau
    y = ys.ys
    dy = [y[i] - y[-1] for i in range(n - 1)]
    mm = m * m
    total = 0j
    # k innermost keeps the radius-prefix property of the accumulation
    for free in box_points(n - 1, r_max):
        s = sum(free)
        free_sq = sum(r * r for r in free)
        free_phase = sum((r * d for r, d in zip(free, dy)), 0j)
        for k in range(n):
            last = k - s
            alpha = (mm * n * (free_sq + last * last) - mm * k * k) / 2
            phase = free_phase + k * y[-1]
            total += cmath.exp(TWO_PI_I * t * alpha - 2j * phase)
    return total


def _transformed(m: int, ys: YTuple, tau: TauParam):
    big = m * m * ys.n
    t = tau.tau
    tau_t = -1.0 / (big * t)
    if not tau_t.imag > 0:
        raise ValueError(f"transformed parameter {tau_t!r} is not in the upper half-plane")
    ys_t = YTuple(tuple(y / (big * t) for y in ys.ys))
    pref = (-1j * t) ** ((1 - ys.n) / 2) / big ** (ys.n / 2)
    pref *= cmath.exp(sum(y * y for y in ys.ys) / (big * math.pi * t * 1j))
    return TauParam(tau_t), ys_t, pref


def f_mn_via_g(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    r_max: int = 12,
    *,
    budget: int = DEFAULT_WORK_BUDGET,
) -> complex:
    """
    ``F_{m,n}`` through ``G_{m,n}`` at the transformed parameter
    ``-1/(m^2 n tau)``.

    ``(-i tau)**((1-n)/2)`` is taken on the principal branch. The inner
    ``G`` uses the same ``r_max``; when ``Im(tau)`` is small the transformed
    nome is close to 1 and a larger radius is needed (see
    :func:`lattice_tail_bound`).
    """
    m, ys, tau, r_max = _prepare(m, ys, tau, r_max)
    tau_t, ys_t, pref = _transformed(m, ys, tau)
    return pref * g_mn(m, ys_t, tau_t, r_max, budget=budget)


def index_tail(
    log_q: float, weight: float, centre: float, growth: float, r_max: int
) -> tuple[float, float]:
    """
    Window sum and tail bound for ``h(r) = |q|^(weight*(r-centre)^2) e^(growth*|r|)``.

    Returns ``(sum_{|r|<=r_max} h(r), bound on sum_{|r|>r_max} h(r))``; the
    tail is ``inf`` when the ratio ``h(r+1)/h(r)`` at ``|r| = r_max`` exceeds
    1/2 on either side.
    """

    def log_h(r: int) -> float:
        return weight * (r - centre) ** 2 * log_q + growth * abs(r)

    window = math.fsum(math.exp(log_h(r)) for r in range(-r_max, r_max + 1))
    up = log_h(r_max + 1) - log_h(r_max)
    down = log_h(-r_max - 1) - log_h(-r_max)
    if max(up, down) > _HALF:
        return window, math.inf
    return window, 2.0 * (math.exp(log_h(r_max + 1)) + math.exp(log_h(-r_max - 1)))


def product_tail(parts: Sequence[tuple[float, float]]) -> float:
    """
    Bound on the omitted part of a separable sum over a box.

    ``parts`` holds ``(window, tail)`` per free index; a point outside the box
    has at least one index outside its window, so the omitted mass is at most
    ``sum_i tail_i * prod_{l != i} (window_l + tail_l)``.
    """
    total = 0.0
    for i, (_, tail_i) in enumerate(parts):
        if tail_i == 0.0:
            continue
        if math.isinf(tail_i):
            return math.inf
        prod = tail_i
        for l, (w, t) in enumerate(parts):
            if l != i:
                prod *= w + t
        total += prod
    return total


def _series_tail(
    log_q: float, weight: float, centre: float, ys: tuple[complex, ...], sign: float, r_max: int
) -> float:
    # |e^{sign*2i r.y}| with r_n eliminated is prod_i e^{-sign*2 r_i Im(y_i - y_n)}
    # times a k-dependent factor handled by the caller; bound each by e^{2|r_i| delta_i}.
    deltas = [abs((y - ys[-1]).imag) for y in ys[:-1]]
    parts = [index_tail(log_q, weight, centre, 2.0 * d, r_max) for d in deltas]
    return product_tail(parts)


def lattice_tail_bound(
    m: int,
    ys: YTuple | Sequence[complex],
    tau: TauParam | complex,
    r_max: int = 12,
    form: str = "G",
) -> float:
    """
    Upper bound on the enumeration truncation error of a lattice sum.

    ``form`` is ``"G"`` (:func:`g_mn`), ``"F"`` (:func:`f_mn_series`) or
    ``"F_via_G"`` (:func:`f_mn_via_g`). The dropped coordinate ``r_n``
    only contributes a factor ``|q|^(nonnegative)`` and is bounded by 1.
    """
    m, ys, tau, r_max = _prepare(m, ys, tau, r_max)
    n = ys.n
    log_q = -2.0 * math.pi * tau.tau.imag
    form = form.upper().replace("-", "_")
    if form == "G":
        return m * n * _series_tail(log_q, 0.5, 0.0, ys.ys, 1.0, r_max)
    if form == "F":
        # completing the square: m^2 n |r|^2/2 - m^2 k^2/2 = m^2 n |r - k/n|^2/2
        weight = m * m * n / 2
        total = 0.0
        for k in range(n):
            factor = math.exp(2.0 * k * ys.ys[-1].imag)
            total += factor * _series_tail(log_q, weight, k / n, ys.ys, -1.0, r_max)
        return total
    if form == "F_VIA_G":
        tau_t, ys_t, pref = _transformed(m, ys, tau)
        return abs(pref) * lattice_tail_bound(m, ys_t, tau_t, r_max, "G")
    raise ValueError(f"unknown form {form!r}")


def radius_for(
    bound: Callable[[int], float], target: float, start: int, cap: int = 200
) -> int:
    """Smallest radius ``>= start`` whose ``bound(r) <= target``; ``cap`` if none."""
    r = start
    while r < cap and not bound(r) <= target:
        r += 1
    return r
