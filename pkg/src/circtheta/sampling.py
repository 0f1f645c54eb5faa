"""
Reproducible sampling of evaluation points.

The generator is SplitMix64: a 64-bit Weyl sequence (increment
``0x9E3779B97F4A7C15``) scrambled by two xor-shift-multiply rounds. Uniform
floats take the top 53 bits. Reports also record every sampled point, so
comparing runs never depends on re-implementing the generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import YTuple
from .numeric_core import TauParam

_MASK = (1 << 64) - 1

Box = tuple[tuple[float, float], tuple[float, float]]


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def complex_in(self, box: Box) -> complex:
        (re_lo, re_hi), (im_lo, im_hi) = box
        re = self.uniform(re_lo, re_hi)
        return complex(re, self.uniform(im_lo, im_hi))

    def tau(self, box: Box) -> TauParam:
        return TauParam(self.complex_in(box))

    def ys(self, n: int, scale: float) -> YTuple:
        """``n-1`` free draws in ``[-scale, scale]^2``, last one closes the sum."""
        box = ((-scale, scale), (-scale, scale))
        return YTuple.closing([self.complex_in(box) for _ in range(n - 1)])

    def spawn(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


@dataclass(frozen=True)
class SamplePlan:
    count: int = 10
    seed: int = 1
    z_box: Box = ((0.0, math.pi), (-0.3, 0.3))
    tau_box: Box = ((-0.5, 0.5), (0.8, 2.0))
    y_scale: float = 0.5

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count must be a positive integer, got {self.count!r}")
        (_, _), (im_lo, im_hi) = self.tau_box
        if im_lo < 0.5 or im_hi < im_lo:
            raise ValueError(f"tau_box must lie in Im >= 0.5, got {self.tau_box!r}")

    def rng(self) -> SplitMix64:
        return SplitMix64(self.seed)

    def z_samples(self) -> list[complex]:
        rng = self.rng()
        return [rng.complex_in(self.z_box) for _ in range(self.count)]
