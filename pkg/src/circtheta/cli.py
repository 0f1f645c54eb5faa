"""
Command-line front end.

    circtheta eval theta --kind 3 --z 0.1+0.2i --tau 0+1i
    circtheta eval cubic --which a --x 0.1 --y 0.2 --tau 0+1i
    circtheta eval g --m 2 --n 1 --y 0 --tau 0+1i
    circtheta verify all --seed 1 --format json --no-timestamp

Complex literals: ``[-]<float>[(+|-)<float>i]`` with no spaces, e.g. ``0.3``,
``-1e-2+0.5i``, ``0-1i``. Lists are comma separated.

Exit codes: 0 all pass, 1 some identity failed, 2 usage error,
3 inconclusive (truncation bounds exceed the tolerance).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from datetime import datetime, timezone
from typing import Sequence

from .cubic import a_cubic, b_cubic, c_cubic, cubic_tail_bound
from .harness import IdentityId, RunConfig, VerificationReport, run_identity
from .lattice import (
    WorkBudgetExceeded,
    YTuple,
    f_mn_series,
    f_mn_via_g,
    g_mn,
    lattice_tail_bound,
)
from .numeric_core import TauParam, theta, theta_tail_bound
from .sampling import SamplePlan, SplitMix64

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?{_FLOAT})(?:([+-]{_FLOAT})i)?$")

TARGETS: dict[str, list[IdentityId]] = {
    "circular": [IdentityId.CIRCULAR_1_1],
    "dual": [IdentityId.DUAL_2_1],
    "f-consistency": [IdentityId.F_CONSISTENCY_2_2_2_3],
    "thm12": [IdentityId.THM12_REPARAM],
    "g-transform": [IdentityId.G_TRANSFORM_3_1],
    "g13": [IdentityId.G13_TRANSFORM],
    "cubic-rels": [IdentityId.CUBIC_B_REL, IdentityId.CUBIC_C_REL, IdentityId.G13_EQUALS_A],
    "proposition": [IdentityId.PROP_A_TRANSFORM, IdentityId.PROP_C_TRANSFORM],
    "counterexample": [IdentityId.COUNTEREXAMPLE_1_4, IdentityId.DECOMPOSITION],
    "all": list(IdentityId),
}

_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_NUM = {"type": ["number", "null"]}

REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "identity", "params", "truncation", "samples",
        "max_rel_err", "tolerance", "verdict", "fourier",
    ],
    "additionalProperties": False,
    "properties": {
        "identity": {"enum": [i.value for i in IdentityId]},
        "params": {
            "type": "object",
            "required": ["m", "n", "tau", "ys"],
            "additionalProperties": False,
            "properties": {
                "m": {"type": "integer"},
                "n": {"type": "integer"},
                "tau": _PAIR,
                "ys": {"type": "array", "items": _PAIR},
            },
        },
        "truncation": {
            "type": "object",
            "required": ["n_max", "r_max", "theta_tail", "lattice_tail"],
            "additionalProperties": False,
            "properties": {
                "n_max": {"type": "integer"},
                "r_max": {"type": "integer"},
                "theta_tail": _NUM,
                "lattice_tail": _NUM,
            },
        },
        "samples": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["z", "lhs", "rhs", "abs_err", "rel_err"],
                "additionalProperties": False,
                "properties": {
                    "z": {"oneOf": [_PAIR, {"type": "null"}]},
                    "lhs": _PAIR,
                    "rhs": _PAIR,
                    "abs_err": _NUM,
                    "rel_err": _NUM,
                    "ratio": _NUM,
                },
            },
        },
        "max_rel_err": _NUM,
        "tolerance": _NUM,
        "verdict": {"enum": ["pass", "fail", "inconclusive"]},
        "fourier": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["mode", "lhs", "rhs", "abs_diff"],
                        "additionalProperties": False,
                        "properties": {
                            "mode": {"type": "integer"},
                            "lhs": _PAIR,
                            "rhs": _PAIR,
                            "abs_diff": _NUM,
                        },
                    },
                },
            ]
        },
    },
}

OUTPUT_SCHEMA = {
    "type": "object",
    "required": ["verdict", "reports"],
    "additionalProperties": False,
    "properties": {
        "timestamp": {"type": "string"},
        "verdict": {"enum": ["pass", "fail", "inconclusive"]},
        "reports": {"type": "array", "items": REPORT_SCHEMA},
    },
}


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    match = _COMPLEX_RE.match(text.strip())
    if not match:
        raise UsageError(f"malformed complex literal {text!r} (expected e.g. 0.5, -1+2i, 0-0.3i)")
    re_part, im_part = match.groups()
    return complex(float(re_part), float(im_part) if im_part else 0.0)


def parse_complex_list(text: str) -> list[complex]:
    return [parse_complex(p) for p in text.split(",")]


def _fmt(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def format_complex(v: complex) -> str:
    if v.imag == 0:
        return _fmt(v.real)
    sign = "-" if math.copysign(1.0, v.imag) < 0 else "+"
    return f"{_fmt(v.real)}{sign}{_fmt(abs(v.imag))}i"


def _tau(text: str | None, rng: SplitMix64, plan: SamplePlan) -> TauParam:
    if text is None:
        return rng.tau(plan.tau_box)
    try:
        return TauParam(parse_complex(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _ys(text: str | None, n: int, rng: SplitMix64, scale: float) -> YTuple:
    if text is None:
        return rng.ys(n, scale)
    values = parse_complex_list(text)
    if len(values) != n:
        raise UsageError(f"--n is {n} but --y has {len(values)} components")
    try:
        return YTuple(tuple(values))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _default_seed() -> int:
    env = os.environ.get("THETA_SEED")
    if env is None:
        return 1
    try:
        return int(env)
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circtheta",
        description="Evaluate theta-type functions and verify circular summation identities.",
        epilog=(
            "Complex literals: [-]<float>[(+|-)<float>i], no spaces (e.g. 0+1i, -0.2+0.9i). "
            "Exit codes: 0 pass, 1 fail, 2 usage error, 3 inconclusive."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a single function value")
    ev_sub = ev.add_subparsers(dest="what", required=True)

    def common_eval(p):
        p.add_argument("--tau", required=True, help="modular parameter, Im > 0 (use --tau=-0.2+1i for a negative real part)")
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = ev_sub.add_parser("theta", help="theta_k(z|tau)")
    p.add_argument("--kind", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--trunc-theta", type=int, default=24)
    common_eval(p)

    p = ev_sub.add_parser("cubic", help="cubic theta a, b or c")
    p.add_argument("--which", choices=["a", "b", "c"], required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--rad", type=int, default=12)
    common_eval(p)

    for name, helptext in (("g", "G_{m,n}(y|tau)"), ("f", "F_{m,n}(y|tau)")):
        p = ev_sub.add_parser(name, help=helptext)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--y", required=True, help="comma-separated, summing to zero")
        p.add_argument("--rad", type=int, default=12)
        if name == "f":
            p.add_argument(
                "--form", choices=["series", "via-g"], default="series",
                help="direct q-series or transformed G (default: series)",
            )
        common_eval(p)

    vf = sub.add_parser("verify", help="verify identities")
    vf.add_argument("target", choices=list(TARGETS))
    vf.add_argument("--m", type=int, default=2)
    vf.add_argument("--n", type=int, default=3)
    vf.add_argument("--tau", default=None, help="default: seeded draw")
    vf.add_argument("--y", default=None, help="comma-separated sum-zero tuple; default: seeded draw")
    vf.add_argument("--xy", default=None, help="x,y for the cubic identities; default: seeded draw")
    vf.add_argument("--samples", type=int, default=10)
    vf.add_argument("--seed", type=int, default=_default_seed())
    vf.add_argument("--tol", type=float, default=1e-9)
    vf.add_argument("--trunc-theta", type=int, default=24)
    vf.add_argument("--rad", type=int, default=12, help="starting lattice radius")
    vf.add_argument("--format", choices=["text", "json"], default="text")
    vf.add_argument("--no-timestamp", action="store_true")
    vf.add_argument(
        "--corrected", action="store_true",
        help="check G13 = 3a and the cubic transformations with constant -i tau/sqrt(3)",
    )
    return parser


def _emit_value(args, value: complex, tail: float) -> None:
    if args.format == "json":
        print(json.dumps({"value": [value.real, value.imag], "tail_bound": tail}))
    else:
        print(format_complex(value))


def _run_eval(args) -> int:
    tau = TauParam(parse_complex(args.tau))
    if args.what == "theta":
        z = parse_complex(args.z)
        value = theta(args.kind, z, tau, args.trunc_theta)
        tail = theta_tail_bound(args.kind, z, tau, args.trunc_theta)
    elif args.what == "cubic":
        x, y = parse_complex(args.x), parse_complex(args.y)
        fn = {"a": a_cubic, "b": b_cubic, "c": c_cubic}[args.which]
        value = fn(x, y, tau, args.rad)
        tail = cubic_tail_bound(args.which, x, y, tau, args.rad)
    else:
        ys = _ys(args.y, args.n, SplitMix64(0), 0.0)
        if args.what == "g":
            value = g_mn(args.m, ys, tau, args.rad)
            tail = lattice_tail_bound(args.m, ys, tau, args.rad, "G")
        elif args.form == "series":
            value = f_mn_series(args.m, ys, tau, args.rad)
            tail = lattice_tail_bound(args.m, ys, tau, args.rad, "F")
        else:
            value = f_mn_via_g(args.m, ys, tau, args.rad)
            tail = lattice_tail_bound(args.m, ys, tau, args.rad, "F_via_G")
    _emit_value(args, value, tail)
    return EXIT_PASS


def _overall(reports: Sequence[VerificationReport]) -> str:
    verdicts = {r.verdict for r in reports}
    if "fail" in verdicts:
        return "fail"
    if "inconclusive" in verdicts:
        return "inconclusive"
    return "pass"


def _text_line(r: VerificationReport) -> str:
    line = (
        f"{r.verdict.upper():<12} {r.identity.value:<22} m={r.m} n={r.n} "
        f"tau={format_complex(r.tau)} max_rel_err={r.max_rel_err:.3e} tol={r.tolerance:.3e}"
    )
    ratios = [s.ratio for s in r.samples if s.ratio is not None]
    if ratios:
        line += f" |R|/|theta3|={max(ratios):.6e}"
    return line


def _run_verify(args) -> int:
    if args.m < 1 or args.n < 1:
        raise UsageError("--m and --n must be positive")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    rng = SplitMix64(args.seed)
    base = SamplePlan(count=args.samples, seed=args.seed)
    tau = _tau(args.tau, rng, base)
    ys = _ys(args.y, args.n, rng, base.y_scale)
    if args.xy is None:
        box = ((-base.y_scale, base.y_scale),) * 2
        x, y = rng.complex_in(box), rng.complex_in(box)
    else:
        xy = parse_complex_list(args.xy)
        if len(xy) != 2:
            raise UsageError("--xy takes exactly two values")
        x, y = xy
    plan = SamplePlan(count=args.samples, seed=rng.next_u64())
    cfg = RunConfig(
        m=args.m, ys=ys, tau=tau, x=x, y=y, plan=plan,
        n_max=args.trunc_theta, r_max=args.rad, tol=args.tol, corrected=args.corrected,
    )
    reports = [run_identity(i, cfg) for i in TARGETS[args.target]]
    overall = _overall(reports)
    if args.format == "json":
        out: dict = {}
        if not args.no_timestamp:
            out["timestamp"] = datetime.now(timezone.utc).isoformat()
        out["verdict"] = overall
        out["reports"] = [r.to_dict() for r in reports]
        print(json.dumps(out, indent=2))
    else:
        for r in reports:
            print(_text_line(r))
        print(f"overall: {overall}")
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[overall]


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "eval":
            return _run_eval(args)
        return _run_verify(args)
    except (UsageError, WorkBudgetExceeded, ValueError) as exc:
        print(f"circtheta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
