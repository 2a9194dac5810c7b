"""Command line front end.  Every command prints one JSON document.

Exit codes: 0 on success, 1 for a library error (payload ``{"error": ...}``),
2 for a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .char2 import Characteristic2
from .covering import CoverContext, classify_vanishing_orbits
from .errors import PrymLabError
from .genus1 import curve_from_k, k_of_tau
from .prym_recon import DEFAULT_PRIME_BOUND, round_trip
from .theta_num import PeriodMatrix, default_eps, theta_eval


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Reports usage problems as JSON on stdout and exits with 2."""

    def error(self, message: str):
        _emit({"error": {"type": "UsageError", "message": message},
               "usage": self.format_usage().strip()})
        raise SystemExit(2)


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _cplx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise ValueError(f"expected re,im but got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _parse_vector(text: str) -> np.ndarray:
    # coordinates separated by ';', each as re,im
    return np.array([_parse_complex(t) for t in text.split(";")], dtype=np.complex128)


def _parse_matrix(text: str) -> PeriodMatrix:
    # rows separated by '|', entries by ';', each entry re,im
    rows = [[_parse_complex(e) for e in row.split(";")] for row in text.split("|")]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("tau must be a square matrix")
    return PeriodMatrix(np.array(rows, dtype=np.complex128))


def cmd_classify_orbits(args) -> dict:
    return classify_vanishing_orbits(CoverContext(args.genus)).to_json()


def cmd_theta_eval(args) -> dict:
    c = Characteristic2.parse(args.char)
    tau = _parse_matrix(args.tau)
    z = _parse_vector(args.z) if args.z is not None else np.zeros(tau.g, dtype=np.complex128)
    eps = args.eps if args.eps is not None else default_eps()
    value = theta_eval(c, z, tau, eps)
    return {"char": c.serialize(), "eps": eps, "value": _cplx(value)}


def cmd_k_of_tau(args) -> dict:
    return {"k": _cplx(k_of_tau(_parse_complex(args.tau)))}


def cmd_curve_from_k(args) -> dict:
    curve = curve_from_k(_parse_complex(args.k))
    return {
        "lambda": _cplx(curve.lambda_),
        "cubic": [_cplx(c) for c in curve.cubic()],
        "p1": [_cplx(t) for t in curve.p1],
        "p2": [_cplx(t) for t in curve.p2],
        "mu": "p1 - p2",
    }


def cmd_roundtrip(args) -> dict:
    report = round_trip(args.genus, args.prime_bound, args.seed, args.runs)
    return report.to_json(timings=not args.no_timings)


def cmd_selftest(args) -> dict:
    from . import selftest

    results = selftest.run()
    return {"checks": results, "passed": sum(r["ok"] for r in results), "total": len(results)}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prymlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify-orbits", help="P2-cosets of vanishing characteristics")
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(func=cmd_classify_orbits)

    p = sub.add_parser("theta-eval", help="theta[c](z, tau) with a truncation bound")
    p.add_argument("--char", required=True, help="doubled characteristic, e.g. 10/01 or 2:10/01")
    p.add_argument("--tau", required=True,
                   help="re,im for genus 1; rows split by '|' and entries by ';' otherwise")
    p.add_argument("--z", default=None, help="coordinates re,im split by ';' (default 0)")
    p.add_argument("--eps", type=float, default=None)
    p.set_defaults(func=cmd_theta_eval)

    p = sub.add_parser("k-of-tau", help="the invariant k(tau)")
    p.add_argument("--tau", required=True, help="re,im; use --tau=-0.5,1 for negative values")
    p.set_defaults(func=cmd_k_of_tau)

    p = sub.add_parser("curve-from-k", help="marked Legendre curve with invariant k")
    p.add_argument("--k", required=True, help="re,im")
    p.set_defaults(func=cmd_curve_from_k)

    p = sub.add_parser("roundtrip-hyperelliptic", help="seeded branch-data reconstruction runs")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--no-timings", action="store_true",
                   help="omit elapsed times so output is byte-reproducible")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("selftest", help="run the invariant battery")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.func(args)
    except (PrymLabError, ValueError, ArithmeticError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1
    _emit(payload)
    if args.command == "selftest" and payload["passed"] != payload["total"]:
        return 1
    return 0
