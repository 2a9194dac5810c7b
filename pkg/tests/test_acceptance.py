"""Acceptance gate: each test is one criterion, with its tolerance and time bound."""
import time

import numpy as np
import pytest

from prymlab.char2 import QuadraticFormF2, zero_count
from prymlab.covering import (
    CoverContext,
    classify_vanishing_orbits,
    distinguished_points,
    kernel_norm_structure,
)
from prymlab.genus1 import curve_from_k, k_of_tau, lambda_of_tau, tau_from_lambda
from prymlab.hyperjac import (
    cantor_add,
    curve_new,
    enumerate_two_torsion,
    identity,
    negate,
    random_divisor,
    scalar_mul,
    two_torsion_from_subset,
)
from prymlab.prym_recon import round_trip
from prymlab.theta_num import all_characteristics, random_period_matrix, theta_eval

SEED = 20240611


class Clock:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f} s, bound {self.limit} s"


@pytest.mark.criterion(1, "even form zero count 3, 10, 36, 136")
def test_even_form_zero_count():
    with Clock(1.0):
        got = [zero_count(QuadraticFormF2.standard(g)) for g in range(1, 5)]
    assert got == [3, 10, 36, 136]
    assert got == [2 ** (g - 1) * (2**g + 1) for g in range(1, 5)]


@pytest.mark.criterion(2, "vanishing characteristics in B2 form three P2-cosets")
def test_vanishing_classification():
    with Clock(1.0):
        results = {g: classify_vanishing_orbits(CoverContext(g)) for g in (2, 3)}
    for g, total in ((2, 12), (3, 48)):
        ctx, cls = CoverContext(g), results[g]
        assert len(cls.solutions) == total
        P2 = ctx.P2
        assert frozenset(cls.orbits[0]) == P2
        assert all(len(o) == 2 ** (2 * (g - 1)) for o in cls.orbits)
        _, l1, l2 = distinguished_points(ctx)
        assert frozenset(cls.orbits[1]) == frozenset(l1 + x for x in P2)
        assert frozenset(cls.orbits[2]) == frozenset(l2 + x for x in P2)
        assert frozenset().union(*map(frozenset, cls.orbits)) == cls.solutions


@pytest.mark.criterion(3, "Ker(Nm) in B2 is P2 together with mu + P2")
def test_kernel_norm_shadow():
    with Clock(5.0):
        records = [kernel_norm_structure(CoverContext(g)) for g in (2, 3, 4)]
    for g, rec in zip((2, 3, 4), records):
        ctx = CoverContext(g)
        mu = distinguished_points(ctx)[0]
        want = ctx.P2 | frozenset(mu + x for x in ctx.P2)
        assert rec.kernel_in_B2 == want
        assert len(want) == 2 * 4 ** (g - 1)


@pytest.mark.criterion(4, "theta parity law below 1e-9")
def test_theta_parity():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    with Clock(10.0):
        for g in (1, 2):
            chars = all_characteristics(g)
            for _ in range(20):
                tau = random_period_matrix(g, rng)
                z = rng.uniform(-0.5, 0.5, g) + 1j * rng.uniform(-0.3, 0.3, g)
                for c in chars:
                    sign = -1 if c.parity() else 1
                    r = abs(theta_eval(c, -z, tau) - sign * theta_eval(c, z, tau))
                    worst = max(worst, r)
    assert worst < 1e-9


@pytest.mark.criterion(5, "k invariant under -1/tau and tau + 2; lambda(-1/tau) lambda(tau) = 1")
def test_genus1_invariances():
    rng = np.random.default_rng(SEED)
    with Clock(5.0):
        for _ in range(50):
            tau = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.3, 3.0))
            k = k_of_tau(tau)
            assert abs(k_of_tau(-1 / tau) - k) < 1e-9
            assert abs(k_of_tau(tau + 2) - k) < 1e-9
            assert abs(lambda_of_tau(-1 / tau) * lambda_of_tau(tau) - 1) < 1e-9


@pytest.mark.criterion(6, "k(i) = -2 and k = lambda + 1/lambda")
def test_k_at_i_and_identity():
    assert abs(k_of_tau(1j) + 2) < 1e-9
    rng = np.random.default_rng(SEED + 1)
    for _ in range(50):
        tau = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.3, 3.0))
        lam = lambda_of_tau(tau)
        assert abs(k_of_tau(tau) - (lam + 1 / lam)) < 1e-9


@pytest.mark.criterion(7, "k -> curve -> tau -> k round trip within 1e-6")
def test_k_round_trip():
    with Clock(5.0):
        for k in (-2.5, -3.0, -5.0, -10.0):
            tau = tau_from_lambda(curve_from_k(k).lambda_)
            assert tau.imag > 0
            assert abs(k_of_tau(tau) - k) < 1e-6


@pytest.mark.criterion(8, "Cantor group axioms and the two-torsion subset model")
def test_cantor_oracle():
    rng = np.random.default_rng(SEED)
    with Clock(30.0):
        for p in (101, 10007):
            for gamma in (2, 3):
                branch = [int(b) for b in rng.choice(p, size=2 * gamma + 1, replace=False)]
                C = curve_new(p, branch)
                for _ in range(200):
                    a, b, c = (random_divisor(C, rng) for _ in range(3))
                    assert cantor_add(C, cantor_add(C, a, b), c) == cantor_add(C, a, cantor_add(C, b, c))
                    assert cantor_add(C, a, b) == cantor_add(C, b, a)
                    assert cantor_add(C, a, identity()) == a
                    assert cantor_add(C, a, negate(C, a)) == identity()
        C = curve_new(101, [0, 1, 2, 3, 4])
        classes = enumerate_two_torsion(C)
        divs = [two_torsion_from_subset(C, S) for S in classes]
        assert len(classes) == 16 == len(set(divs))
        assert all(scalar_mul(C, 2, D) == identity() for D in divs)
        for S in classes:
            for T in classes:
                got = cantor_add(C, two_torsion_from_subset(C, S), two_torsion_from_subset(C, T))
                assert got == two_torsion_from_subset(C, S + T)


@pytest.mark.criterion(9, "hyperelliptic reconstruction, g = 3 and 4, 20 runs each")
def test_hyperelliptic_reconstruction():
    with Clock(60.0):
        reports = [round_trip(g, seed=SEED, runs=20) for g in (3, 4)]
    for rep in reports:
        assert rep.matches == 20
        for run in rep.runs:
            assert run.uniqueness_count == 1
            assert run.stray_points == 0
            assert run.recovered[1] == run.branch.B2


@pytest.mark.criterion(10, "g = 2 reconstruction with Möbius certificates, 10 runs")
def test_g2_reconstruction():
    with Clock(30.0):
        rep = round_trip(2, seed=SEED, runs=10)
    assert rep.matches == 10
    for run in rep.runs:
        assert run.error is None
        # every quadruple other than the canonical one needs a certificate
        assert run.certificates == 3
        assert frozenset(run.recovered[0]) == frozenset(run.branch.B1)
