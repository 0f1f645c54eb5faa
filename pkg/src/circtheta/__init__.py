"""Jacobi theta functions, circular-summation lattice sums and identity checks."""

from .cubic import OMEGA, a_cubic, b_cubic, c_cubic, cubic_tail_bound
from .harness import IdentityId, VerificationReport, VERIFIERS
from .lattice import YTuple, f_mn_series, f_mn_via_g, g_mn, lattice_tail_bound
from .numeric_core import (
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
from .sampling import SamplePlan, SplitMix64

__version__ = "0.1.0"
