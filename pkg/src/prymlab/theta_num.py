"""Riemann theta functions with half-integer characteristics.

    theta[a; b](z, tau) = sum_n exp(pi i (n+a) tau (n+a) + 2 pi i (n+a).(z+b))

The lattice sum is cut to the box ``|n|_inf <= R`` where ``R`` comes from
:func:`truncation_radius`, a certified bound on the discarded tail.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .char2 import Characteristic2
from .errors import GenusMismatchError, InvalidPeriodMatrixError

EPS_FLOOR = 1e-13
DEFAULT_EPS = 1e-12
_HALF = Fraction(1, 2)


def default_eps() -> float:
    """Default tolerance, overridable through ``PRYM_LAB_EPS``."""
    raw = os.environ.get("PRYM_LAB_EPS")
    return float(raw) if raw else DEFAULT_EPS


@dataclass(frozen=True, eq=False)
class PeriodMatrix:
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.atleast_2d(np.asarray(self.entries, dtype=np.complex128))
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidPeriodMatrixError(f"period matrix must be square, got shape {m.shape}")
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-12):
            raise InvalidPeriodMatrixError("period matrix is not symmetric")
        m = 0.5 * (m + m.T)
        lam = float(np.linalg.eigvalsh(m.imag)[0])
        if not lam > 0.0:
            raise InvalidPeriodMatrixError(
                f"imaginary part is not positive definite (smallest eigenvalue {lam:.3g})"
            )
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "_lambda_min", lam)

    @classmethod
    def genus1(cls, tau: complex) -> PeriodMatrix:
        return cls(np.array([[complex(tau)]]))

    @property
    def g(self) -> int:
        return self.entries.shape[0]

    @property
    def lambda_min(self) -> float:
        """Smallest eigenvalue of ``Im(tau)``."""
        return self._lambda_min


def _half(v) -> Fraction:
    f = Fraction(v).limit_denominator(4)
    if f % 1 not in (0, _HALF):
        raise ValueError(f"characteristic entries must lie in (1/2)Z, got {v}")
    return f


@dataclass(frozen=True)
class RationalCharacteristic:
    """Half-integer characteristic ``[top; bottom]`` with entries in {0, 1/2}."""

    top: tuple[Fraction, ...]
    bottom: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        top = tuple(_half(v) for v in self.top)
        bottom = tuple(_half(v) for v in self.bottom)
        if len(top) != len(bottom):
            raise GenusMismatchError("top and bottom lengths differ")
        if any(v not in (0, _HALF) for v in top + bottom):
            raise ValueError("characteristic entries must be 0 or 1/2")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)

    @property
    def g(self) -> int:
        return len(self.top)

    @classmethod
    def from_char2(cls, c: Characteristic2) -> RationalCharacteristic:
        return cls(tuple(_HALF * t for t in c.top), tuple(_HALF * b for b in c.bottom))

    def to_char2(self) -> Characteristic2:
        return Characteristic2(self.g, tuple(int(2 * t) for t in self.top),
                               tuple(int(2 * b) for b in self.bottom))

    def parity(self) -> int:
        """``4 top.bottom mod 2``: 0 for even, 1 for odd characteristics."""
        return int(4 * sum(t * b for t, b in zip(self.top, self.bottom))) % 2


def _as_vector(z, g: int) -> np.ndarray:
    v = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if v.shape != (g,):
        raise GenusMismatchError(f"z has shape {v.shape}, expected ({g},)")
    return v


def _tail_bound(g: int, lam: float, y: float, radius: int) -> float:
    """Bound on the sum over ``|n|_inf > radius`` of the absolute terms.

    A lattice point on the shell ``|n|_inf = k`` has ``|n + a| >= k - 1/2`` and
    its term is at most ``exp(-pi lam r^2 + 2 pi r y)`` for some ``r >= k - 1/2``;
    that function decreases once ``r >= y / lam``.
    """
    r_star = y / lam
    total = 0.0
    k = radius + 1
    while True:
        r = max(k - 0.5, r_star)
        shell = (2 * k + 1) ** g - (2 * k - 1) ** g
        term = shell * math.exp(-math.pi * lam * r * r + 2 * math.pi * r * y)
        total += term
        # past the maximum the shells decay faster than geometrically
        if k - 0.5 > r_star + 1.0 and term < 1e-17 * total + 1e-300:
            return total * (1.0 + 1e-12)
        k += 1


def truncation_radius(tau: PeriodMatrix, z, eps: float) -> int:
    """Smallest ``R >= 1`` whose certified tail bound is below ``eps``."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    eps = max(eps, EPS_FLOOR)
    v = _as_vector(z, tau.g)
    y = float(np.linalg.norm(v.imag))
    lam = tau.lambda_min
    radius = 1
    while _tail_bound(tau.g, lam, y, radius) >= eps:
        radius += 1
    return radius


def theta_eval(
    c: RationalCharacteristic | Characteristic2,
    z,
    tau: PeriodMatrix,
    eps: float | None = None,
) -> complex:
    """``theta[c](z, tau)`` to within ``eps`` of the infinite series."""
    if isinstance(c, Characteristic2):
        c = RationalCharacteristic.from_char2(c)
    if c.g != tau.g:
        raise GenusMismatchError(f"characteristic genus {c.g}, period matrix genus {tau.g}")
    eps = default_eps() if eps is None else eps
    v = _as_vector(z, tau.g)
    radius = truncation_radius(tau, v, eps)
    a = np.array([float(t) for t in c.top])
    b = np.array([float(t) for t in c.bottom])
    return _kernels.theta_sum(tau.entries, v, a, b, radius)


def theta_constants_g1(tau: complex, eps: float | None = None) -> tuple[complex, complex, complex]:
    """``(theta_00, theta_01, theta_10)`` at ``z = 0``; subscripts are ``[top bottom]``."""
    if not complex(tau).imag > 0:
        raise InvalidPeriodMatrixError(f"tau must lie in the upper half plane, got {tau}")
    t = PeriodMatrix.genus1(tau)
    out = []
    for top, bottom in ((0, 0), (0, _HALF), (_HALF, 0)):
        out.append(theta_eval(RationalCharacteristic((top,), (bottom,)), [0.0], t, eps))
    return tuple(out)


def random_period_matrix(g: int, rng: np.random.Generator, min_eig: float = 0.5) -> PeriodMatrix:
    """Random point of the Siegel upper half space, ``Im`` eigenvalues ``>= min_eig``."""
    x = rng.uniform(-0.5, 0.5, size=(g, g))
    a = rng.normal(size=(g, g)) * 0.4
    y = a @ a.T + min_eig * np.eye(g)
    return PeriodMatrix((x + x.T) / 2 + 1j * y)


def all_characteristics(g: int) -> Sequence[RationalCharacteristic]:
    from .char2 import iter_torsion

    return [RationalCharacteristic.from_char2(c) for c in iter_torsion(g)]
