"""Hyperelliptic Jacobians over prime fields.

Curves are kept in the odd model ``y^2 = f(x)`` with ``f`` monic of degree
``2*gamma + 1`` and a single Weierstrass point at infinity, which is also the
base point of the Abel map.  An even number of branch values is brought to
this model by ``x -> 1/(x - b)`` for a designated branch value ``b``; the
change is recorded on the curve so model coordinates can be mapped back.

Points of P^1 are field elements with ``None`` standing for infinity.
Polynomials are tuples of ints, leading coefficient first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np
from sympy import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_div,
    gf_eval,
    gf_from_int_poly,
    gf_gcdex,
    gf_monic,
    gf_mul,
    gf_neg,
    gf_quo,
    gf_rem,
    gf_sqr,
    gf_sub,
)

from .errors import CurveError

Poly = tuple[int, ...]
Point = Optional[tuple[int, int]]  # None is the point at infinity
P1 = Optional[int]


def _t(coeffs) -> Poly:
    return tuple(int(c) for c in coeffs)


def _strs(values: Iterable[P1]) -> list[Optional[str]]:
    return [None if v is None else str(v) for v in values]


@dataclass(frozen=True)
class HyperellipticCurve:
    p: int
    branch_xs: tuple[int, ...]
    f: Poly
    original_branch: tuple[int, ...]
    infinity: Optional[int] = None

    @property
    def genus(self) -> int:
        return (len(self.f) - 2) // 2

    def to_model(self, x: P1) -> P1:
        """Original coordinate on P^1 to model coordinate."""
        if self.infinity is None:
            return x
        if x is None:
            return 0
        d = (x - self.infinity) % self.p
        return None if d == 0 else pow(d, -1, self.p)

    def from_model(self, x: P1) -> P1:
        if self.infinity is None:
            return x
        if x is None:
            return self.infinity
        if x % self.p == 0:
            return None
        return (self.infinity + pow(x, -1, self.p)) % self.p

    def eval_f(self, x: int) -> int:
        return int(gf_eval(list(self.f), x % self.p, self.p, ZZ))

    def contains(self, pt: Point) -> bool:
        if pt is None:
            return True
        x, y = pt
        return (y * y - self.eval_f(x)) % self.p == 0

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "genus": self.genus,
            "branch": _strs(self.original_branch),
            "model_branch": _strs(self.branch_xs),
            "mobius": None if self.infinity is None
            else {"map": "x -> 1/(x - b)", "b": str(self.infinity)},
        }


def curve_new(p: int, branch_xs: Iterable[int], infinity: Optional[int] = None) -> HyperellipticCurve:
    """Hyperelliptic curve branched at ``branch_xs`` (and at infinity if the count is odd)."""
    if p == 2 or not isprime(p):
        raise CurveError(f"p = {p} is not an odd prime")
    original = tuple(int(b) % p for b in branch_xs)
    if len(set(original)) != len(original):
        raise CurveError("branch values must be distinct mod p")
    if len(original) % 2 == 0:
        if infinity is None:
            raise CurveError("an even number of branch values needs a designated infinity point")
        infinity %= p
        if infinity not in original:
            raise CurveError(f"designated infinity point {infinity} is not a branch value")
        model = tuple(pow(b - infinity, -1, p) for b in original if b != infinity)
    else:
        if infinity is not None:
            raise CurveError("an odd number of branch values already has infinity as a branch point")
        model = original
    if len(model) < 3:
        raise CurveError("genus 0: at least four branch points (with infinity) are required")
    f: list = [1]
    for b in model:
        f = gf_mul(f, [1, (-b) % p], p, ZZ)
    return HyperellipticCurve(p, model, _t(f), original, infinity)


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced representative ``(u, v)``: ``u`` monic, ``deg v < deg u``, ``u | v^2 - f``."""

    u: Poly
    v: Poly

    @property
    def degree(self) -> int:
        return len(self.u) - 1

    def is_identity(self) -> bool:
        return self.u == (1,)

    def to_json(self) -> dict:
        """Coefficients as decimal strings, constant term first."""
        return {"u": [str(c) for c in reversed(self.u)], "v": [str(c) for c in reversed(self.v)]}

    @classmethod
    def from_json(cls, data: dict) -> MumfordDivisor:
        u = _t(int(c) for c in reversed(data["u"]))
        v = tuple(int(c) for c in reversed(data["v"]))
        while v and v[0] == 0:
            v = v[1:]
        return cls(u, v)


def identity() -> MumfordDivisor:
    return MumfordDivisor((1,), ())


def check_divisor(C: HyperellipticCurve, D: MumfordDivisor) -> None:
    p = C.p
    if not D.u or D.u[0] != 1:
        raise CurveError("u must be monic")
    if any(not 0 <= c < p for c in D.u + D.v) or (D.v and D.v[0] == 0):
        raise CurveError("coefficients must be reduced mod p without leading zeros")
    if len(D.v) >= len(D.u):
        raise CurveError("deg v must be smaller than deg u")
    if D.degree > C.genus:
        raise CurveError(f"deg u = {D.degree} exceeds the genus {C.genus}")
    resid = gf_rem(gf_sub(gf_sqr(list(D.v), p, ZZ), list(C.f), p, ZZ), list(D.u), p, ZZ)
    if resid:
        raise CurveError("u does not divide v^2 - f")


def negate(C: HyperellipticCurve, D: MumfordDivisor) -> MumfordDivisor:
    return MumfordDivisor(D.u, _t(gf_neg(list(D.v), C.p, ZZ)))


def _reduce(C: HyperellipticCurve, u: list, v: list) -> MumfordDivisor:
    p, f, g = C.p, list(C.f), C.genus
    while len(u) - 1 > g:
        u = gf_quo(gf_sub(f, gf_sqr(v, p, ZZ), p, ZZ), u, p, ZZ)
        v = gf_rem(gf_neg(v, p, ZZ), u, p, ZZ)
    _, u = gf_monic(u, p, ZZ)
    v = gf_rem(v, u, p, ZZ)
    return MumfordDivisor(_t(u), _t(v))


def cantor_add(C: HyperellipticCurve, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    """Composition followed by reduction (Cantor's algorithm, ``h = 0``)."""
    p, f = C.p, list(C.f)
    u1, v1, u2, v2 = list(D1.u), list(D1.v), list(D2.u), list(D2.v)
    e1, e2, d1 = gf_gcdex(u1, u2, p, ZZ)
    c1, c2, d = gf_gcdex(d1, gf_add(v1, v2, p, ZZ), p, ZZ)
    s1 = gf_mul(c1, e1, p, ZZ)
    s2 = gf_mul(c1, e2, p, ZZ)
    dd = gf_sqr(d, p, ZZ)
    u, r = gf_div(gf_mul(u1, u2, p, ZZ), dd, p, ZZ)
    if r:
        raise CurveError("malformed divisor: d^2 does not divide u1 u2")
    num = gf_add(
        gf_add(
            gf_mul(gf_mul(s1, u1, p, ZZ), v2, p, ZZ),
            gf_mul(gf_mul(s2, u2, p, ZZ), v1, p, ZZ),
            p, ZZ,
        ),
        gf_mul(c2, gf_add(gf_mul(v1, v2, p, ZZ), f, p, ZZ), p, ZZ),
        p, ZZ,
    )
    v, r = gf_div(num, d, p, ZZ)
    if r:
        raise CurveError("malformed divisor: d does not divide the composed v")
    v = gf_rem(v, u, p, ZZ)
    return _reduce(C, u, v)


def scalar_mul(C: HyperellipticCurve, n: int, D: MumfordDivisor) -> MumfordDivisor:
    if n < 0:
        return scalar_mul(C, -n, negate(C, D))
    acc, base = identity(), D
    while n:
        if n & 1:
            acc = cantor_add(C, acc, base)
        base = cantor_add(C, base, base)
        n >>= 1
    return acc


def divisor_of_point(C: HyperellipticCurve, P: Point) -> MumfordDivisor:
    """Class of ``P - infinity``."""
    if P is None:
        return identity()
    x, y = P[0] % C.p, P[1] % C.p
    if not C.contains((x, y)):
        raise CurveError(f"({x}, {y}) is not on the curve")
    return MumfordDivisor((1, (-x) % C.p), (y,) if y else ())


def point_of_divisor(C: HyperellipticCurve, D: MumfordDivisor) -> Point:
    """Inverse of :func:`divisor_of_point` on classes with ``deg u <= 1``."""
    if D.degree == 0:
        return None
    if D.degree != 1:
        raise CurveError("only classes of the form cl(x - infinity) lift to a point")
    x = (-D.u[1]) % C.p
    y = D.v[0] if D.v else 0
    return (x, y)


def is_on_abel_image(C: HyperellipticCurve, D: MumfordDivisor) -> bool:
    """Whether ``D = cl(x - infinity)`` for a point ``x`` (``deg u <= 1``)."""
    return D.degree <= 1


def weierstrass_points(C: HyperellipticCurve) -> list[Point]:
    """Finite Weierstrass points in model coordinates, then infinity."""
    return [(b, 0) for b in C.branch_xs] + [None]


@dataclass(frozen=True)
class TwoTorsionClass:
    """Point of order dividing two, as a set of branch points.

    Even subsets ``T`` of the full branch set modulo complementation; the
    stored representative never contains infinity, so it is an even-size
    subset of the finite branch values.  Addition is symmetric difference.
    """

    subset: frozenset[int]

    @classmethod
    def from_subset(cls, C: HyperellipticCurve, subset: Iterable[P1]) -> TwoTorsionClass:
        s = set(subset)
        full = set(C.branch_xs) | {None}
        if not s <= full:
            raise CurveError("subset contains points that are not branch points")
        if len(s) % 2:
            raise CurveError("two-torsion subsets must have even size")
        if None in s:
            s = full - s
        return cls(frozenset(s))

    def __add__(self, other: TwoTorsionClass) -> TwoTorsionClass:
        return TwoTorsionClass(self.subset ^ other.subset)

    def is_zero(self) -> bool:
        return not self.subset

    def to_json(self) -> list[str]:
        return [str(b) for b in sorted(self.subset)]


def two_torsion_from_subset(C: HyperellipticCurve, S: TwoTorsionClass) -> MumfordDivisor:
    """``u`` is the product over ``S`` or its finite complement, whichever has degree <= genus."""
    if not S.subset <= set(C.branch_xs) or len(S.subset) % 2:
        raise CurveError("invalid two-torsion subset")
    roots = S.subset
    if len(roots) > C.genus:
        roots = set(C.branch_xs) - roots
    u: list = [1]
    for b in sorted(roots):
        u = gf_mul(u, [1, (-b) % C.p], C.p, ZZ)
    return MumfordDivisor(_t(u), ())


def enumerate_two_torsion(C: HyperellipticCurve) -> list[TwoTorsionClass]:
    """All ``2^(2 gamma)`` classes, by subset size and then lexicographically; zero first."""
    xs = sorted(C.branch_xs)
    out = []
    for size in range(0, len(xs) + 1, 2):
        for combo in itertools.combinations(xs, size):
            out.append(TwoTorsionClass(frozenset(combo)))
    return out


def is_square(a: int, p: int) -> bool:
    a %= p
    return a != 0 and pow(a, (p - 1) // 2, p) == 1


def points_over(C: HyperellipticCurve, x: int) -> list[tuple[int, int]]:
    """Affine model points with first coordinate ``x``; a ramified fibre gives one point."""
    fx = C.eval_f(x)
    if fx == 0:
        return [(x % C.p, 0)]
    if not is_square(fx, C.p):
        return []
    y = int(sqrt_mod(fx, C.p))
    return sorted([(x % C.p, y), (x % C.p, C.p - y)])


def affine_points(C: HyperellipticCurve) -> Iterator[tuple[int, int]]:
    for x in range(C.p):
        yield from points_over(C, x)


def random_point(C: HyperellipticCurve, rng: np.random.Generator) -> tuple[int, int]:
    while True:
        pts = points_over(C, int(rng.integers(C.p)))
        if pts:
            return pts[int(rng.integers(len(pts)))]


def random_divisor(C: HyperellipticCurve, rng: np.random.Generator) -> MumfordDivisor:
    """Sum of ``genus`` random point classes; generically of full degree."""
    D = identity()
    for _ in range(C.genus):
        D = cantor_add(C, D, divisor_of_point(C, random_point(C, rng)))
    return D


def monic_polys(p: int, degree: int) -> Iterator[Poly]:
    for tail in itertools.product(range(p), repeat=degree):
        yield _t(gf_from_int_poly([1, *tail], p))
