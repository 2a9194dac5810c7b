"""Torsion-level geometry of an unramified double cover ``C~ -> C``.

``C`` has genus ``g`` and ``C~`` genus ``2g - 1``.  Characteristics on ``J(C)``
are indexed ``(alpha_0, alpha)`` with ``alpha`` of length ``g - 1``; on
``J(C~)`` they are ``(alpha_0, alpha, alpha')``.

Two subsets of ``J(C~)_2`` live here:

* ``pullback_image`` -- ``pi^*(J(C)_2)``, of size ``2^(2g-1)``;
* ``B2`` -- the points of order two of the abelian subvariety ``pi^*(J(C))``.
  Halving ``eta`` in ``J(C)`` gives points whose pullback has bottom
  coordinate ``beta_0 = 1``, so ``B2 = pullback_image + {0, lambda_1}`` with
  ``4^g`` elements.  It coincides with the Weyl annihilator of ``P2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .char2 import (
    Characteristic2,
    QuadraticFormF2,
    enumerate_torsion,
    form_eval,
    iter_torsion,
    weyl_pairing,
)
from .errors import EnumerationBoundError, GenusMismatchError, PrymLabError

MAX_COVER_GENUS = 4


class ClassificationError(PrymLabError, RuntimeError):
    pass


def _need(c: Characteristic2, g: int, what: str) -> None:
    if c.g != g:
        raise GenusMismatchError(f"{what} expects genus {g}, got {c.g}")


@dataclass(frozen=True)
class CoverContext:
    g: int
    g_tilde: int = field(init=False)

    def __post_init__(self) -> None:
        if self.g < 2:
            raise ValueError("the base curve must have genus at least 2")
        object.__setattr__(self, "g_tilde", 2 * self.g - 1)

    @cached_property
    def eta(self) -> Characteristic2:
        return Characteristic2.unit(self.g, 0, "bottom")

    @cached_property
    def pullback_image(self) -> frozenset[Characteristic2]:
        return frozenset(pullback_char(self, c) for c in iter_torsion(self.g))

    @cached_property
    def B2(self) -> frozenset[Characteristic2]:
        lam1 = distinguished_points(self)[1]
        img = self.pullback_image
        return img | frozenset(c + lam1 for c in img)

    @cached_property
    def P2(self) -> frozenset[Characteristic2]:
        return frozenset(prym_embed_char(self, c) for c in iter_torsion(self.g - 1))

    @cached_property
    def q0(self) -> QuadraticFormF2:
        """Form of ``Theta_0``, the divisor of ``theta[0 0 0; 1/2 0 0]``."""
        return QuadraticFormF2(self.g_tilde, Characteristic2.unit(self.g_tilde, 0, "bottom"))


def pullback_char(ctx: CoverContext, c: Characteristic2) -> Characteristic2:
    """``[a0 a; b0 b] -> [a0 a a; 2 b0 b b]``, doubled so ``2 b0`` vanishes."""
    _need(c, ctx.g, "pullback_char")
    a0, a = c.top[0], c.top[1:]
    b = c.bottom[1:]
    return Characteristic2(ctx.g_tilde, (a0,) + a + a, (0,) + b + b)


def norm_char(ctx: CoverContext, c: Characteristic2) -> Characteristic2:
    """``[a0 a a'; b0 b b'] -> [2 a0, a + a'; b0, b + b']``."""
    _need(c, ctx.g_tilde, "norm_char")
    n = ctx.g - 1
    t, s = c.top, c.bottom
    top = (0,) + tuple(x ^ y for x, y in zip(t[1 : 1 + n], t[1 + n :]))
    bottom = (s[0],) + tuple(x ^ y for x, y in zip(s[1 : 1 + n], s[1 + n :]))
    return Characteristic2(ctx.g, top, bottom)


def prym_embed_char(ctx: CoverContext, c: Characteristic2) -> Characteristic2:
    """``[a; b] -> [0 a -a; 0 b -b]``; ``-a = a`` over F2."""
    _need(c, ctx.g - 1, "prym_embed_char")
    return Characteristic2(ctx.g_tilde, (0,) + c.top + c.top, (0,) + c.bottom + c.bottom)


def distinguished_points(
    ctx: CoverContext,
) -> tuple[Characteristic2, Characteristic2, Characteristic2]:
    """``(mu, lambda_1, lambda_2)`` with ``mu = b~_0/2``, ``lambda_1 = a~_0/2``."""
    n = ctx.g_tilde
    mu = Characteristic2.unit(n, 0, "top")
    lam1 = Characteristic2.unit(n, 0, "bottom")
    return mu, lam1, mu + lam1


def _check_bound(ctx: CoverContext) -> None:
    if ctx.g > MAX_COVER_GENUS:
        raise EnumerationBoundError(f"genus {ctx.g} exceeds covering bound {MAX_COVER_GENUS}")


@dataclass(frozen=True)
class OrbitClassification:
    """The zeros of ``q0`` on ``B2``, split into ``P2``-cosets.

    ``orbits[0]`` is ``P2`` (the Wirtinger orbit), ``orbits[1]`` is
    ``lambda_1 + P2`` and ``orbits[2]`` is ``lambda_2 + P2``.
    """

    g: int
    solutions: frozenset[Characteristic2]
    orbits: tuple[tuple[Characteristic2, ...], ...]

    def to_json(self) -> dict:
        labels = ("P2", "lambda1+P2", "lambda2+P2")
        return {
            "genus": self.g,
            "solutions": len(self.solutions),
            "labels": list(labels),
            "cosets": [[c.serialize() for c in orb] for orb in self.orbits],
        }


def classify_vanishing_orbits(ctx: CoverContext) -> OrbitClassification:
    """Brute force over ``J(C~)_2`` for the ``alpha`` with ``q0`` vanishing on ``alpha + P2``.

    The classes found are exactly the ``P2``-cosets of the zeros of ``q0`` in
    ``B2``; three are expected.
    """
    _check_bound(ctx)
    B2, P2, q0 = ctx.B2, ctx.P2, ctx.q0
    solutions = frozenset(
        c for c in enumerate_torsion(ctx.g_tilde, bound=2 * MAX_COVER_GENUS - 1)
        if c in B2 and form_eval(q0, c) == 0
    )
    remaining = set(solutions)
    cosets: list[frozenset[Characteristic2]] = []
    while remaining:
        rep = min(remaining)
        coset = frozenset(rep + r for r in P2)
        if not coset <= remaining:
            raise ClassificationError(f"coset of {rep} is not contained in the zero set")
        cosets.append(coset)
        remaining -= coset

    _, lam1, lam2 = distinguished_points(ctx)
    labelled = []
    for anchor in (Characteristic2.zero(ctx.g_tilde), lam1, lam2):
        match = [c for c in cosets if anchor in c]
        if len(match) != 1:
            raise ClassificationError(f"no coset contains {anchor}")
        labelled.append(tuple(sorted(match[0])))
    if len(cosets) != 3:
        raise ClassificationError(f"expected three cosets, found {len(cosets)}")
    return OrbitClassification(ctx.g, solutions, tuple(labelled))


@dataclass(frozen=True)
class KernelNormRecord:
    g: int
    kernel_in_B2: frozenset[Characteristic2]
    P2: frozenset[Characteristic2]
    mu_coset: frozenset[Characteristic2]

    @property
    def holds(self) -> bool:
        return self.kernel_in_B2 == self.P2 | self.mu_coset and not (self.P2 & self.mu_coset)


def kernel_norm_structure(ctx: CoverContext) -> KernelNormRecord:
    """Check ``Ker(Nm) ∩ B2 = P2 ∪ (mu + P2)`` by enumeration."""
    _check_bound(ctx)
    zero = Characteristic2.zero(ctx.g)
    kernel = frozenset(c for c in ctx.B2 if norm_char(ctx, c) == zero)
    mu = distinguished_points(ctx)[0]
    rec = KernelNormRecord(ctx.g, kernel, ctx.P2, frozenset(mu + r for r in ctx.P2))
    if not rec.holds:
        raise ClassificationError("Ker(Nm) ∩ B2 differs from P2 ∪ (mu + P2)")
    return rec


def weyl_annihilator(subset: frozenset[Characteristic2], g: int) -> frozenset[Characteristic2]:
    """Every characteristic pairing trivially with all of ``subset``."""
    return frozenset(
        c for c in iter_torsion(g) if all(weyl_pairing(c, s) == 0 for s in subset)
    )
