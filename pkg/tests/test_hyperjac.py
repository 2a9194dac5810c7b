import itertools
import math

import numpy as np
import pytest

from prymlab.errors import CurveError
from prymlab.hyperjac import (
    MumfordDivisor,
    TwoTorsionClass,
    affine_points,
    cantor_add,
    check_divisor,
    curve_new,
    divisor_of_point,
    enumerate_two_torsion,
    identity,
    is_on_abel_image,
    monic_polys,
    negate,
    point_of_divisor,
    random_divisor,
    scalar_mul,
    two_torsion_from_subset,
    weierstrass_points,
)


def poly_eval(poly, x, p):
    acc = 0
    for c in poly:
        acc = (acc * x + c) % p
    return acc


def brute_jacobian(C):
    """Every reduced pair (u, v), testing u | v^2 - f by long division in plain ints."""
    p, f = C.p, list(C.f)

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b):
            q = a[0] * pow(b[0], -1, p) % p
            for i in range(len(b)):
                a[i] = (a[i] - q * b[i]) % p
            a.pop(0)
        while a and a[0] == 0:
            a.pop(0)
        return a

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    found = []
    for deg in range(C.genus + 1):
        for u in monic_polys(p, deg):
            for vs in itertools.product(range(p), repeat=deg):
                v = list(vs)
                while v and v[0] == 0:
                    v.pop(0)
                sq = mul(v, v) if v else []
                diff = [0] * max(len(sq), len(f))
                for i, c in enumerate(reversed(sq)):
                    diff[-1 - i] += c
                for i, c in enumerate(reversed(f)):
                    diff[-1 - i] -= c
                diff = [c % p for c in diff]
                while diff and diff[0] == 0:
                    diff.pop(0)
                if not rem(diff, list(u)):
                    found.append(MumfordDivisor(tuple(u), tuple(v)))
    return found


@pytest.mark.parametrize("p,branch", [(7, [0, 1, 2, 3, 4]), (11, [1, 3, 4, 6, 9])])
def test_group_order_against_enumeration(p, branch):
    C = curve_new(p, branch)
    elements = brute_jacobian(C)
    N = len(elements)
    assert len(set(elements)) == N
    assert (math.sqrt(p) - 1) ** 4 <= N <= (math.sqrt(p) + 1) ** 4
    for D in elements:
        check_divisor(C, D)
    rng = np.random.default_rng(p)
    for _ in range(10):
        D = elements[int(rng.integers(N))]
        assert scalar_mul(C, N, D) == identity()
    # closure under the group law
    pool = set(elements)
    for D, E in itertools.islice(itertools.product(elements, repeat=2), 0, None, 97):
        assert cantor_add(C, D, E) in pool


def test_two_torsion_brute_force_p101():
    C = curve_new(101, [0, 1, 2, 3, 4])
    # two-torsion means v = 0, so u is a monic divisor of f of degree <= 2
    brute = set()
    for deg in range(3):
        for u in monic_polys(101, deg):
            if all(poly_eval(C.f, x, 101) == 0 for x in range(101) if poly_eval(u, x, 101) == 0) \
                    and sum(poly_eval(u, x, 101) == 0 for x in range(101)) == deg:
                brute.add(MumfordDivisor(u, ()))
    model = {two_torsion_from_subset(C, S) for S in enumerate_two_torsion(C)}
    assert brute == model
    assert len(model) == 16


def test_two_torsion_complement_rule():
    C = curve_new(101, [0, 1, 2, 3, 4, 5, 6])
    S = TwoTorsionClass.from_subset(C, [0, 1, 2, 3, 4, 5])
    D = two_torsion_from_subset(C, S)
    assert D.degree == 1 and D.u == (1, 101 - 6)
    assert TwoTorsionClass.from_subset(C, [5, None]) == TwoTorsionClass(frozenset({0, 1, 2, 3, 4, 6}))
    with pytest.raises(CurveError):
        TwoTorsionClass.from_subset(C, [0])
    assert enumerate_two_torsion(C)[0].is_zero()
    assert len(enumerate_two_torsion(C)) == 64


def test_even_model_mobius():
    C = curve_new(101, [3, 5, 8, 13, 21, 34], infinity=34)
    assert C.genus == 2
    assert C.to_model(34) is None and C.from_model(None) == 34
    for x in [None, 0, 3, 50, 100]:
        assert C.from_model(C.to_model(x)) == x
    assert sorted(C.branch_xs) == sorted(C.to_model(b) for b in [3, 5, 8, 13, 21])
    data = C.to_json()
    assert data["mobius"] == {"map": "x -> 1/(x - b)", "b": "34"}
    assert data["branch"] == ["3", "5", "8", "13", "21", "34"]


def test_curve_errors():
    with pytest.raises(CurveError):
        curve_new(9, [0, 1, 2, 3, 4])
    with pytest.raises(CurveError):
        curve_new(101, [0, 1, 1, 3, 4])
    with pytest.raises(CurveError):
        curve_new(101, [0, 1, 2, 3])
    with pytest.raises(CurveError):
        curve_new(101, [0, 1, 2, 3], infinity=7)
    with pytest.raises(CurveError):
        curve_new(101, [0, 1])


def test_abel_map_and_points():
    C = curve_new(101, [0, 1, 2, 3, 4])
    pts = list(affine_points(C))
    assert all(C.contains(P) for P in pts)
    for P in pts[:20]:
        D = divisor_of_point(C, P)
        assert is_on_abel_image(C, D)
        assert point_of_divisor(C, D) == P
        assert negate(C, D) == divisor_of_point(C, (P[0], (-P[1]) % 101))
    assert point_of_divisor(C, identity()) is None
    assert weierstrass_points(C)[-1] is None
    W = [divisor_of_point(C, P) for P in weierstrass_points(C)[:-1]]
    assert all(scalar_mul(C, 2, D) == identity() for D in W)
    with pytest.raises(CurveError):
        divisor_of_point(C, (5, 1))


def test_divisor_json_and_validation():
    C = curve_new(10007, [1, 2, 3, 4, 5, 6, 7])
    rng = np.random.default_rng(1)
    for _ in range(20):
        D = random_divisor(C, rng)
        check_divisor(C, D)
        assert MumfordDivisor.from_json(D.to_json()) == D
    with pytest.raises(CurveError):
        check_divisor(C, MumfordDivisor((1, 0, 0, 0, 0), ()))
    with pytest.raises(CurveError):
        check_divisor(C, MumfordDivisor((1, 5), (3,)))


def test_scalar_mul_consistency():
    C = curve_new(10007, [1, 2, 3, 4, 5])
    rng = np.random.default_rng(2)
    D = random_divisor(C, rng)
    acc = identity()
    for n in range(12):
        assert scalar_mul(C, n, D) == acc
        acc = cantor_add(C, acc, D)
    assert scalar_mul(C, -3, D) == negate(C, scalar_mul(C, 3, D))
