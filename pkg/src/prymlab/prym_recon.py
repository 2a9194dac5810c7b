"""Hyperelliptic double covers: the quadruple orbit and the recovery of ``(C, eta)``.

``C`` is branched over ``B = B1 ∪ B2`` with ``|B1| = 2``; the partition gives
``eta``.  ``C2`` is the hyperelliptic curve branched over ``B2`` and the Prym
variety is identified with ``J(C2)``.  Over each ``b`` in ``B1`` the curve ``C2``
has two points ``q', q''``.  With ``qj`` a Weierstrass point of ``C2`` the data
carried by the extended Prym data is the orbit, over ``rho`` in ``J(C2)_2``, of

    {cl(q'_1 - qj) + rho, cl(q''_1 - qj) + rho} ∪ {cl(q'_2 - qj) + rho, cl(q''_2 - qj) + rho}

and exactly one of these quadruples lies on the Abel curve of ``C2`` when
``genus(C2) >= 2``.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from sympy import isprime

from .errors import CurveError, PreconditionError, PrymLabError, ReconstructionError
from .hyperjac import (
    P1,
    HyperellipticCurve,
    MumfordDivisor,
    Point,
    TwoTorsionClass,
    _strs,
    cantor_add,
    curve_new,
    divisor_of_point,
    enumerate_two_torsion,
    is_on_abel_image,
    negate,
    point_of_divisor,
    points_over,
    two_torsion_from_subset,
)

RESAMPLE_CAP = 1000
DEFAULT_PRIME_BOUND = 10_000


@dataclass(frozen=True)
class BranchData:
    p: int
    B1: tuple[int, int]
    B2: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.p
        if p == 2 or not isprime(p):
            raise CurveError(f"p = {p} is not an odd prime")
        B1 = tuple(int(b) % p for b in self.B1)
        B2 = tuple(int(b) % p for b in self.B2)
        if len(B1) != 2:
            raise CurveError("B1 must have exactly two values")
        if len(B2) % 2 or len(B2) < 4:
            raise CurveError("B2 must have 2g values with g >= 2")
        if len(set(B1 + B2)) != len(B1) + len(B2):
            raise CurveError("branch values must be pairwise distinct mod p")
        object.__setattr__(self, "B1", B1)
        object.__setattr__(self, "B2", B2)

    @property
    def g(self) -> int:
        return len(self.B2) // 2

    def to_json(self) -> dict:
        return {"p": self.p, "g": self.g, "B1": _strs(self.B1), "B2": _strs(self.B2)}


@dataclass(frozen=True)
class PrymScenario:
    """Points are in the model coordinates of ``C2``; ``qj = None`` is its point at infinity."""

    branch: BranchData
    C: HyperellipticCurve
    C2: HyperellipticCurve
    q1p: tuple[int, int]
    q1pp: tuple[int, int]
    q2p: tuple[int, int]
    q2pp: tuple[int, int]
    qj: Point = None


def forward_build(branch: BranchData, qj: Point = None) -> PrymScenario:
    """Build ``C``, ``C2`` and the marked points from branch data.

    Both curves send ``B2[-1]`` to infinity.  The fibres of ``C2`` over ``B1``
    must consist of rational points; otherwise :class:`PreconditionError`.
    """
    p = branch.p
    C = curve_new(p, branch.B1 + branch.B2, infinity=branch.B2[-1])
    C2 = curve_new(p, branch.B2, infinity=branch.B2[-1])
    fibres = []
    for b in branch.B1:
        pts = points_over(C2, C2.to_model(b))
        if len(pts) != 2:
            raise PreconditionError(f"the fibre of C2 over {b} is not rational (p = {p})")
        fibres.append(pts)
    if qj is not None and qj[1] != 0:
        raise CurveError("qj must be a Weierstrass point of C2")
    if qj is not None and not C2.contains(qj):
        raise CurveError(f"{qj} is not on C2")
    (q1p, q1pp), (q2p, q2pp) = fibres
    return PrymScenario(branch, C, C2, q1p, q1pp, q2p, q2pp, qj)


@dataclass(frozen=True)
class Quadruple:
    rho: TwoTorsionClass
    pairs: tuple[tuple[MumfordDivisor, MumfordDivisor], tuple[MumfordDivisor, MumfordDivisor]]

    def members(self) -> tuple[MumfordDivisor, ...]:
        return self.pairs[0] + self.pairs[1]

    def to_json(self) -> dict:
        return {
            "rho": self.rho.to_json(),
            "pairs": [[D.to_json() for D in pair] for pair in self.pairs],
        }


@dataclass(frozen=True)
class QuadrupleOrbit:
    curve: HyperellipticCurve
    quadruples: tuple[Quadruple, ...]

    def __len__(self) -> int:
        return len(self.quadruples)

    def __iter__(self):
        return iter(self.quadruples)

    def canonical(self) -> Quadruple:
        return next(q for q in self.quadruples if q.rho.is_zero())

    def shuffled(self, rng: np.random.Generator) -> QuadrupleOrbit:
        order = rng.permutation(len(self.quadruples))
        return QuadrupleOrbit(self.curve, tuple(self.quadruples[int(i)] for i in order))

    def to_json(self) -> dict:
        return {"curve": self.curve.to_json(), "quadruples": [q.to_json() for q in self.quadruples]}


def _difference(C: HyperellipticCurve, P: Point, Q: Point) -> MumfordDivisor:
    return cantor_add(C, divisor_of_point(C, P), negate(C, divisor_of_point(C, Q)))


def translate_quadruple(C: HyperellipticCurve, quad: Quadruple, rho: TwoTorsionClass) -> Quadruple:
    R = two_torsion_from_subset(C, rho)
    pairs = tuple(tuple(cantor_add(C, D, R) for D in pair) for pair in quad.pairs)
    return Quadruple(quad.rho + rho, pairs)


def quadruple_orbit(s: PrymScenario) -> QuadrupleOrbit:
    C2 = s.C2
    base = Quadruple(
        TwoTorsionClass(frozenset()),
        (
            (_difference(C2, s.q1p, s.qj), _difference(C2, s.q1pp, s.qj)),
            (_difference(C2, s.q2p, s.qj), _difference(C2, s.q2pp, s.qj)),
        ),
    )
    quads = tuple(translate_quadruple(C2, base, rho) for rho in enumerate_two_torsion(C2))
    return QuadrupleOrbit(C2, quads)


def abel_image_counts(C2: HyperellipticCurve, Q: QuadrupleOrbit) -> list[int]:
    """Number of members on the Abel curve, per quadruple."""
    return [sum(is_on_abel_image(C2, D) for D in quad.members()) for quad in Q]


@dataclass(frozen=True)
class Reconstruction:
    B1: tuple[P1, P1]
    B2: tuple[int, ...]
    uniqueness_count: int
    stray_points: int
    rho: TwoTorsionClass


def _pair_image(C2: HyperellipticCurve, pair) -> P1:
    xs = set()
    for D in pair:
        pt = point_of_divisor(C2, D)
        xs.add(None if pt is None else pt[0])
    if len(xs) != 1:
        raise ReconstructionError(f"a pair maps to {len(xs)} points of P^1 instead of one")
    return C2.from_model(xs.pop())


def reconstruct(C2: HyperellipticCurve, Q: QuadrupleOrbit) -> Reconstruction:
    """Recover ``(B1, B2)`` from ``C2`` and the orbit when ``genus(C2) >= 2``."""
    if C2.genus < 2:
        raise ReconstructionError("use reconstruct_g2 when C2 has genus one")
    counts = abel_image_counts(C2, Q)
    full = [i for i, c in enumerate(counts) if c == 4]
    stray = sum(c for c in counts if c != 4)
    if len(full) != 1 or stray:
        raise ReconstructionError(
            f"{len(full)} quadruples lie on the Abel curve and {stray} other points meet it"
        )
    quad = Q.quadruples[full[0]]
    b1 = tuple(_pair_image(C2, pair) for pair in quad.pairs)
    if len(set(b1)) != 2:
        raise ReconstructionError("the distinguished quadruple maps to fewer than two points")
    return Reconstruction(b1, C2.original_branch, len(full), stray, quad.rho)


@dataclass(frozen=True)
class Mobius:
    """``x -> (a x + b) / (c x + d)`` on P^1(F_p)."""

    p: int
    a: int
    b: int
    c: int
    d: int

    def __call__(self, x: P1) -> P1:
        p = self.p
        if x is None:
            num, den = self.a, self.c
        else:
            num, den = self.a * x + self.b, self.c * x + self.d
        num, den = num % p, den % p
        return None if den == 0 else num * pow(den, -1, p) % p

    @staticmethod
    def _frame(p: int, pts) -> tuple[int, int, int, int]:
        # matrix sending [1:0], [0:1], [1:1] to the three given points
        (x1, y1), (x2, y2), (x3, y3) = [(1, 0) if t is None else (t, 1) for t in pts]
        det = (x1 * y2 - x2 * y1) % p
        if det == 0:
            raise ValueError("frame points must be distinct")
        inv = pow(det, -1, p)
        c1 = (x3 * y2 - x2 * y3) * inv % p
        c2 = (x1 * y3 - x3 * y1) * inv % p
        return (c1 * x1 % p, c2 * x2 % p, c1 * y1 % p, c2 * y2 % p)

    @classmethod
    def from_triples(cls, p: int, src, dst) -> Mobius:
        a1, b1, c1, d1 = cls._frame(p, src)
        a2, b2, c2, d2 = cls._frame(p, dst)
        # dst_frame * adj(src_frame)
        ia, ib, ic, id_ = d1, -b1, -c1, a1
        return cls(
            p,
            (a2 * ia + b2 * ic) % p,
            (a2 * ib + b2 * id_) % p,
            (c2 * ia + d2 * ic) % p,
            (c2 * ib + d2 * id_) % p,
        )

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b), str(self.c), str(self.d)]


def find_mobius(p: int, B2, B1, B1_target) -> Optional[Mobius]:
    """A Möbius map fixing ``B2`` setwise and sending ``B1`` onto ``B1_target``."""
    B2 = list(B2)
    want2, want1 = set(B2), set(B1_target)
    for triple in itertools.permutations(B2, 3):
        psi = Mobius.from_triples(p, B2[:3], triple)
        if {psi(b) for b in B2} == want2 and {psi(b) for b in B1} == want1:
            return psi
    return None


@dataclass(frozen=True)
class G2Reconstruction:
    B1: tuple[P1, P1]
    B2: tuple[int, ...]
    rho: TwoTorsionClass
    certificate: Optional[Mobius]


def reconstruct_g2(s: PrymScenario, Q: QuadrupleOrbit, choice: int = 0) -> G2Reconstruction:
    """Recover ``(B1, B2)`` when ``C`` has genus two and the Prym is the elliptic curve ``C2``.

    Any quadruple may be used.  For a quadruple other than ``rho = 0`` the
    result carries a Möbius map fixing ``B2`` and sending the ``rho = 0``
    image onto the chosen one.
    """
    C2 = s.C2
    if C2.genus != 1:
        raise ReconstructionError("reconstruct_g2 needs an elliptic C2")

    def image(quad: Quadruple) -> tuple[P1, P1]:
        for pair in quad.pairs:
            if {negate(C2, D) for D in pair} != set(pair):
                raise ReconstructionError("a pair is not stable under negation")
        return tuple(_pair_image(C2, pair) for pair in quad.pairs)

    quad = Q.quadruples[choice]
    b1 = image(quad)
    B2 = C2.original_branch
    if quad.rho.is_zero():
        return G2Reconstruction(b1, B2, quad.rho, None)
    canonical = image(Q.canonical())
    psi = find_mobius(C2.p, B2, canonical, b1)
    if psi is None:
        raise ReconstructionError("no Möbius map relates the chosen quadruple to the canonical one")
    return G2Reconstruction(b1, B2, quad.rho, psi)


@dataclass
class RunRecord:
    seed: int
    branch: BranchData
    attempts: int
    uniqueness_count: Optional[int]
    stray_points: Optional[int]
    recovered: Optional[tuple[tuple, tuple]]
    match: bool
    elapsed_ms: float
    certificates: Optional[int] = None
    error: Optional[str] = None

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "seed": self.seed,
            "branch": self.branch.to_json(),
            "attempts": self.attempts,
            "uniqueness_count": self.uniqueness_count,
            "stray_points": self.stray_points,
            "recovered": None if self.recovered is None
            else {"B1": _strs(self.recovered[0]), "B2": _strs(self.recovered[1])},
            "match": self.match,
        }
        if self.certificates is not None:
            out["certificates"] = self.certificates
        if self.error is not None:
            out["error"] = self.error
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@dataclass
class ReconstructionReport:
    genus: int
    prime_bound: int
    seed: int
    runs: list[RunRecord] = field(default_factory=list)

    @property
    def matches(self) -> int:
        return sum(r.match for r in self.runs)

    def summary(self) -> dict:
        return {
            "runs": len(self.runs),
            "matches": self.matches,
            "all_match": self.matches == len(self.runs),
            "uniqueness_counts": sorted({r.uniqueness_count for r in self.runs},
                                        key=lambda c: -1 if c is None else c),
        }

    def to_json(self, timings: bool = True) -> dict:
        summary = self.summary()
        if timings:
            summary["total_ms"] = round(sum(r.elapsed_ms for r in self.runs), 3)
        return {
            "genus": self.genus,
            "prime_bound": self.prime_bound,
            "seed": self.seed,
            "rng": "PCG64",
            "runs": [r.to_json(timings) for r in self.runs],
            "summary": summary,
        }


def _sample_prime(rng: np.random.Generator, lo: int, hi: int) -> int:
    while True:
        n = int(rng.integers(lo, hi + 1))
        if n > 2 and isprime(n):
            return n


def sample_scenario(genus: int, prime_bound: int, rng: np.random.Generator) -> tuple[PrymScenario, int]:
    """Draw branch data until the rationality preconditions hold; returns the attempt count."""
    n_values = 2 * genus + 2
    lo = max(11, n_values + 1)
    if prime_bound < lo:
        raise PrymLabError(f"prime bound {prime_bound} leaves no prime >= {lo}")
    for attempt in range(1, RESAMPLE_CAP + 1):
        p = _sample_prime(rng, lo, prime_bound)
        values = [int(v) for v in rng.choice(p, size=n_values, replace=False)]
        branch = BranchData(p, tuple(values[:2]), tuple(values[2:]))
        try:
            return forward_build(branch), attempt
        except PreconditionError:
            continue
    raise PrymLabError(f"resampling cap of {RESAMPLE_CAP} attempts exceeded")


def _run_once(genus: int, prime_bound: int, seed: int) -> RunRecord:
    rng = np.random.Generator(np.random.PCG64(seed))
    start = time.perf_counter()
    scenario, attempts = sample_scenario(genus, prime_bound, rng)
    branch = scenario.branch
    Q = quadruple_orbit(scenario).shuffled(rng)
    want = (frozenset(branch.B1), branch.B2)
    record = RunRecord(seed, branch, attempts, None, None, None, False, 0.0)
    try:
        if genus == 2:
            results = [reconstruct_g2(scenario, Q, i) for i in range(len(Q))]
            canon = next(r for r in results if r.rho.is_zero())
            record.certificates = sum(r.certificate is not None for r in results)
            record.recovered = (canon.B1, canon.B2)
            record.match = (frozenset(canon.B1), canon.B2) == want \
                and record.certificates == len(Q) - 1
        else:
            counts = abel_image_counts(scenario.C2, Q)
            record.uniqueness_count = counts.count(4)
            record.stray_points = sum(c for c in counts if c != 4)
            rec = reconstruct(scenario.C2, Q)
            record.recovered = (rec.B1, rec.B2)
            record.match = (frozenset(rec.B1), rec.B2) == want
    except ReconstructionError as exc:
        record.error = str(exc)
    record.elapsed_ms = (time.perf_counter() - start) * 1e3
    return record


def round_trip(genus: int, prime_bound: int = DEFAULT_PRIME_BOUND, seed: int = 0,
               runs: int = 1) -> ReconstructionReport:
    """Sample, build the orbit, reconstruct and compare, for ``runs`` seeds ``seed, seed+1, ...``."""
    if genus not in (2, 3, 4):
        raise PrymLabError("round trips are supported for genus 2, 3 and 4")
    if runs < 1:
        raise PrymLabError("runs must be positive")
    report = ReconstructionReport(genus, prime_bound, seed)
    for i in range(runs):
        report.runs.append(_run_once(genus, prime_bound, seed + i))
    return report
