"""
Two-variable cubic theta functions

    a(x,y|tau) = sum q^(m^2+mn+n^2)            e^(2im(2x+y) + 2in(x+2y))
    b(x,y|tau) = sum w^(m-n) q^(m^2+mn+n^2)    e^(...)
    c(x,y|tau) = sum q^(m^2+mn+n^2+m+n+1/3)    e^(...)

with ``w = exp(2*pi*i/3)``, summed over ``(m, n)`` in ``[-r_max, r_max]^2``
in max-norm shells.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .lattice import _check_pos_int, box_points, index_tail, product_tail
from .numeric_core import TWO_PI_I, TauParam, _check_finite

OMEGA = cmath.exp(2j * math.pi / 3)


@dataclass(frozen=True)
class CubicArgs:
    x: complex
    y: complex
    tau: TauParam

    def __post_init__(self):
        object.__setattr__(self, "x", _check_finite(self.x, "x"))
        object.__setattr__(self, "y", _check_finite(self.y, "y"))
        object.__setattr__(self, "tau", TauParam.coerce(self.tau))


def _cubic_sum(which: str, x: complex, y: complex, tau, r_max: int) -> complex:
    args = CubicArgs(x, y, tau)
    r_max = _check_pos_int(r_max, "r_max", 0)
    t = args.tau.tau
    u = 2 * args.x + args.y
    v = args.x + 2 * args.y
    shifted = which == "c"
    twisted = which == "b"
    total = 0j
    for m, n in box_points(2, r_max):
        e = m * m + m * n + n * n
        if shifted:
            e = e + m + n + 1.0 / 3.0
        arg = TWO_PI_I * t * e + 2j * (m * u + n * v)
        if twisted:
            # w^(m-n) folded into the exponent; (m-n) mod 3 keeps it exact
            arg += 2j * math.pi * ((m - n) % 3) / 3
        total += cmath.exp(arg)
    return total


def a_cubic(x: complex, y: complex, tau: TauParam | complex, r_max: int = 12) -> complex:
    return _cubic_sum("a", x, y, tau, r_max)


def b_cubic(x: complex, y: complex, tau: TauParam | complex, r_max: int = 12) -> complex:
    return _cubic_sum("b", x, y, tau, r_max)


def c_cubic(x: complex, y: complex, tau: TauParam | complex, r_max: int = 12) -> complex:
    """``c(x, y | tau)``; the ``q^(1/3)`` is ``exp(2*pi*i*tau/3)``."""
    return _cubic_sum("c", x, y, tau, r_max)


def cubic_tail_bound(
    which: str, x: complex, y: complex, tau: TauParam | complex, r_max: int = 12
) -> float:
    """
    Upper bound on the truncation error of ``a``, ``b`` or ``c``.

    Uses ``m^2+mn+n^2 >= (m^2+n^2)/2``, applied to ``(m+1/3, n+1/3)`` for
    ``c`` (whose exponent equals ``Q(m+1/3, n+1/3)``), and bounds the phase
    by ``e^(2|m| |Im(2x+y)| + 2|n| |Im(x+2y)|)``.
    """
    if which not in ("a", "b", "c"):
        raise ValueError(f"which must be 'a', 'b' or 'c', got {which!r}")
    args = CubicArgs(x, y, tau)
    r_max = _check_pos_int(r_max, "r_max", 0)
    log_q = -2.0 * math.pi * args.tau.tau.imag
    centre = -1.0 / 3.0 if which == "c" else 0.0
    grow = (
        2.0 * abs((2 * args.x + args.y).imag),
        2.0 * abs((args.x + 2 * args.y).imag),
    )
    parts = [index_tail(log_q, 0.5, centre, g, r_max) for g in grow]
    return product_tail(parts)
