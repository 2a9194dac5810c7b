"""Quick invariant battery behind ``prymlab selftest``."""
from __future__ import annotations

from typing import Callable

import numpy as np

from . import _kernels
from .char2 import (
    QuadraticFormF2,
    even_zero_count,
    form_eval,
    iter_torsion,
    weyl_pairing,
    zero_count,
)
from .covering import CoverContext, classify_vanishing_orbits, kernel_norm_structure
from .genus1 import curve_from_k, k_of_tau, lambda_of_tau, tau_from_lambda
from .hyperjac import (
    cantor_add,
    curve_new,
    enumerate_two_torsion,
    identity,
    negate,
    random_divisor,
    two_torsion_from_subset,
)
from .prym_recon import round_trip
from .theta_num import (
    all_characteristics,
    random_period_matrix,
    theta_constants_g1,
    theta_eval,
)

SEED = 20240611
CHECKS: list[tuple[str, Callable[[], str]]] = []


def check(name: str):
    def register(fn):
        CHECKS.append((name, fn))
        return fn

    return register


@check("even form zero count, g = 1..4")
def _zero_counts() -> str:
    got = [zero_count(QuadraticFormF2.standard(g)) for g in range(1, 5)]
    assert got == [even_zero_count(g) for g in range(1, 5)], got
    return str(got)


@check("polar form equals Weyl pairing, g = 2")
def _polar() -> str:
    q = QuadraticFormF2.standard(2)
    chars = list(iter_torsion(2))
    for a in chars:
        for b in chars:
            polar = form_eval(q, a + b) ^ form_eval(q, a) ^ form_eval(q, b) ^ form_eval(q, a - a)
            assert polar == weyl_pairing(a, b)
    return "256 pairs"


@check("three vanishing P2-cosets, g = 2, 3")
def _orbits() -> str:
    sizes = []
    for g in (2, 3):
        cls = classify_vanishing_orbits(CoverContext(g))
        assert [len(o) for o in cls.orbits] == [4 ** (g - 1)] * 3
        sizes.append(len(cls.solutions))
    assert sizes == [12, 48], sizes
    return str(sizes)


@check("Ker(Nm) ∩ B2 = P2 ∪ (mu + P2), g = 2, 3, 4")
def _kernel() -> str:
    sizes = [len(kernel_norm_structure(CoverContext(g)).kernel_in_B2) for g in (2, 3, 4)]
    assert sizes == [8, 32, 128], sizes
    return str(sizes)


@check("theta parity law, g = 1, 2")
def _parity() -> str:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for g in (1, 2):
        for _ in range(3):
            tau = random_period_matrix(g, rng)
            z = rng.uniform(-0.5, 0.5, g) + 1j * rng.uniform(-0.3, 0.3, g)
            for c in all_characteristics(g):
                sign = -1 if c.parity() else 1
                r = abs(theta_eval(c, -z, tau) - sign * theta_eval(c, z, tau))
                worst = max(worst, r)
    assert worst < 1e-9, worst
    return f"max residual {worst:.2e}"


@check("Jacobi identity theta_00^4 = theta_01^4 + theta_10^4")
def _jacobi() -> str:
    t00, t01, t10 = theta_constants_g1(0.3 + 0.8j)
    r = abs(t00**4 - t01**4 - t10**4)
    assert r < 1e-9, r
    return f"residual {r:.2e}"


@check("k is invariant under tau -> -1/tau and tau -> tau + 2")
def _invariance() -> str:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(5):
        tau = complex(rng.uniform(-1, 1), rng.uniform(0.3, 3))
        k = k_of_tau(tau)
        worst = max(worst, abs(k_of_tau(-1 / tau) - k), abs(k_of_tau(tau + 2) - k),
                    abs(lambda_of_tau(-1 / tau) * lambda_of_tau(tau) - 1))
    assert worst < 1e-9, worst
    return f"max residual {worst:.2e}"


@check("k(i) = -2")
def _k_at_i() -> str:
    r = abs(k_of_tau(1j) + 2)
    assert r < 1e-9, r
    return f"residual {r:.2e}"


@check("k -> Legendre curve -> tau -> k round trip")
def _k_round_trip() -> str:
    worst = 0.0
    for k in (-2.5, -3.0, -5.0, -10.0):
        tau = tau_from_lambda(curve_from_k(k).lambda_)
        worst = max(worst, abs(k_of_tau(tau) - k))
    assert worst < 1e-6, worst
    return f"max residual {worst:.2e}"


@check("Cantor group axioms, p = 101, genus 2")
def _cantor() -> str:
    rng = np.random.default_rng(SEED)
    C = curve_new(101, [0, 1, 2, 3, 4])
    for _ in range(20):
        a, b, c = (random_divisor(C, rng) for _ in range(3))
        assert cantor_add(C, cantor_add(C, a, b), c) == cantor_add(C, a, cantor_add(C, b, c))
        assert cantor_add(C, a, b) == cantor_add(C, b, a)
        assert cantor_add(C, a, negate(C, a)) == identity()
        assert cantor_add(C, a, identity()) == a
    return "20 triples"


@check("two-torsion subset model, genus 2")
def _two_torsion() -> str:
    C = curve_new(101, [0, 1, 2, 3, 4])
    classes = enumerate_two_torsion(C)
    divs = {two_torsion_from_subset(C, S) for S in classes}
    assert len(divs) == 16
    for S in classes:
        for T in classes:
            lhs = two_torsion_from_subset(C, S + T)
            assert lhs == cantor_add(C, two_torsion_from_subset(C, S), two_torsion_from_subset(C, T))
    return "16 classes"


@check("hyperelliptic reconstruction round trip, g = 2, 3")
def _recon() -> str:
    out = []
    for g in (2, 3):
        rep = round_trip(g, 2000, SEED, 3)
        assert rep.matches == 3, rep.to_json(timings=False)
        out.append(f"g={g}: 3/3")
    return ", ".join(out)


@check("compiled and fallback theta kernels agree")
def _backends() -> str:
    if _kernels.compiled_theta_sum is None:
        return "compiled kernel unavailable; skipped"
    rng = np.random.default_rng(SEED)
    tau = random_period_matrix(2, rng)
    z = rng.normal(size=2) * 0.3 + 0j
    a, b = np.array([0.5, 0.0]), np.array([0.0, 0.5])
    r = abs(_kernels.compiled_theta_sum(tau.entries, z, a, b, 6)
            - _kernels.python_theta_sum(tau.entries, z, a, b, 6))
    assert r < 1e-12, r
    return f"difference {r:.2e}"


def run() -> list[dict]:
    results = []
    for name, fn in CHECKS:
        try:
            detail, ok = fn(), True
        except AssertionError as exc:
            detail, ok = f"assertion failed: {exc}", False
        except Exception as exc:  # a crash is a failed check, not a crashed battery
            detail, ok = f"{type(exc).__name__}: {exc}", False
        results.append({
            "check": name,
            "ok": ok,
            "detail": detail,
        })
    return results

