"""Genus one: the invariant ``k`` of a torus with a marked point of order two.

``lambda(tau) = -theta_01^4 / theta_10^4`` and ``k = lambda + 1/lambda`` is
invariant under the theta group ``Gamma_{1,2}`` (generated by ``tau -> -1/tau``
and ``tau -> tau + 2``).  Conversely ``k`` determines the Legendre curve
``y^2 = x(x-1)(x-lambda)`` with the class of ``(0,0) - (1,0)`` marked.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .errors import AGMConvergenceError, CurveError, InvalidPeriodMatrixError, PrymLabError
from .theta_num import EPS_FLOOR, theta_constants_g1

AGM_MAX_ITER = 64
AGM_TOL = 1e-14
_TIE_TOL = 1e-12


class PeriodBranchError(PrymLabError, ArithmeticError):
    """The AGM period ratio does not reproduce the requested invariant."""


def _check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise InvalidPeriodMatrixError(f"tau must lie in the upper half plane, got {tau}")
    return tau


def _constants(tau: complex, eps: float | None):
    # k magnifies the relative error of the constants by about 4|k|, so the
    # cheap genus one sums default to the eps floor
    return theta_constants_g1(_check_tau(tau), EPS_FLOOR if eps is None else eps)


def lambda_of_tau(tau: complex, eps: float | None = None) -> complex:
    _, t01, t10 = _constants(tau, eps)
    return -(t01**4) / t10**4


def k_of_tau(tau: complex, eps: float | None = None) -> complex:
    _, t01, t10 = _constants(tau, eps)
    a, b = t10**4, t01**4
    return -(a * a + b * b) / (a * b)


@dataclass(frozen=True)
class LegendreCurveWithMarking:
    """``y^2 = x(x-1)(x-lambda)`` with ``mu = cl(p1 - p2)``."""

    lambda_: complex
    p1: tuple[complex, complex] = (0j, 0j)
    p2: tuple[complex, complex] = (1 + 0j, 0j)
    mu_class: tuple[tuple[int, str], ...] = field(default=((1, "p1"), (-1, "p2")))

    def __post_init__(self) -> None:
        lam = complex(self.lambda_)
        if lam == 0 or lam == 1:
            raise CurveError(f"lambda = {lam} gives a singular curve")
        object.__setattr__(self, "lambda_", lam)

    def cubic(self) -> tuple[complex, complex, complex, complex]:
        """Coefficients of ``x^3 + c2 x^2 + c1 x + c0``, leading term first."""
        lam = self.lambda_
        return (1 + 0j, -(1 + lam), lam, 0j)

    def contains(self, x: complex, y: complex, tol: float = 1e-12) -> bool:
        lam = self.lambda_
        return abs(y * y - x * (x - 1) * (x - lam)) <= tol * max(1.0, abs(x) ** 3)


def curve_from_k(k: complex) -> LegendreCurveWithMarking:
    """Solve ``x^2 - k x + 1 = 0`` and return the marked Legendre curve.

    The root with ``|lambda| >= 1`` is chosen; on the unit circle the larger
    real part wins, then the larger imaginary part.
    """
    k = complex(k)
    if k == 0 or k == 2:
        raise CurveError(f"k = {k} lies outside the image C - {{0, 2}}")
    disc = cmath.sqrt(k * k - 4)
    roots = [(k + disc) / 2, (k - disc) / 2]
    if abs(abs(roots[0]) - abs(roots[1])) > _TIE_TOL:
        lam = max(roots, key=abs)
    else:
        lam = max(roots, key=lambda r: (r.real, r.imag))
    return LegendreCurveWithMarking(lam)


def agm(a: complex, b: complex) -> complex:
    """Arithmetic-geometric mean with the optimal square-root branch."""
    a, b = complex(a), complex(b)
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= AGM_TOL * abs(a):
            return a
        a_next = (a + b) / 2
        b_next = cmath.sqrt(a * b)
        if abs(a_next - b_next) > abs(a_next + b_next):
            b_next = -b_next
        a, b = a_next, b_next
    raise AGMConvergenceError(f"AGM did not converge in {AGM_MAX_ITER} iterations")


def _coset_images(tau: complex) -> list[complex]:
    # representatives of Gamma_{1,2} in SL(2, Z): identity, T and T S
    return [tau, tau + 1, 1 - 1 / tau]


def period_ratio(lam: complex) -> complex:
    """``omega_2 / omega_1`` for ``y^2 = x(x-1)(x-lam)`` from two AGM periods.

    With roots ``e1, e2, e3`` (descending when real) the periods are
    ``pi / M(sqrt(e1-e3), sqrt(e1-e2))`` and ``i pi / M(sqrt(e1-e3), sqrt(e2-e3))``.
    """
    lam = complex(lam)
    if lam == 0 or lam == 1:
        raise CurveError(f"lambda = {lam} gives a singular curve")
    if lam.imag == 0:
        e1, e2, e3 = sorted((0.0, 1.0, lam.real), reverse=True)
    else:
        e1, e2, e3 = 1.0, 0.0, lam
    s13 = cmath.sqrt(e1 - e3)
    w1 = cmath.pi / agm(s13, cmath.sqrt(e1 - e2))
    w2 = 1j * cmath.pi / agm(s13, cmath.sqrt(e2 - e3))
    return w2 / w1


def tau_from_lambda(lam: complex, eps: float | None = None) -> complex:
    """A period ratio ``tau`` of the Legendre curve with ``k(tau) = lam + 1/lam``.

    Only the pair ``{lam, 1/lam}`` is recovered.  The AGM ratio is moved into
    the right ``Gamma_{1,2}`` coset and checked against :func:`k_of_tau`;
    :class:`PeriodBranchError` is raised rather than returning an unchecked
    value.
    """
    lam = complex(lam)
    target = lam + 1 / lam
    tau = period_ratio(lam)
    if tau.imag < 0:
        # same lattice, reoriented basis
        tau = -tau
    if not tau.imag > 0:
        raise PeriodBranchError(f"degenerate period ratio {tau} for lambda = {lam}")
    best = None
    for cand in _coset_images(tau):
        if cand.imag <= 0:
            continue
        err = abs(k_of_tau(cand, eps) - target)
        if best is None or err < best[0]:
            best = (err, cand)
    if best is None or best[0] > 1e-7 * max(1.0, abs(target)):
        raise PeriodBranchError(f"period ratio does not reproduce k for lambda = {lam}")
    return best[1]
