"""Theta characteristics as F2 vectors.

A point of order two of a principally polarized abelian variety of dimension
``g`` is written ``x'tau + x''`` with ``x', x''`` in ``(1/2)Z^g``.  We store the
doubled vectors ``2x' mod 2`` (``top``) and ``2x'' mod 2`` (``bottom``).

Basis convention: the half period ``a_i / 2`` is ``(top=0, bottom=e_i)`` and
``b_i / 2`` is ``(top=e_i, bottom=0)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import EnumerationBoundError, GenusMismatchError

MAX_ENUM_GENUS = 6


def _bits(values: Sequence[int], g: int, name: str) -> tuple[int, ...]:
    out = tuple(int(v) for v in values)
    if len(out) != g:
        raise GenusMismatchError(f"{name} has length {len(out)}, expected {g}")
    if any(v not in (0, 1) for v in out):
        raise ValueError(f"{name} entries must be 0 or 1, got {out}")
    return out


@dataclass(frozen=True, order=True)
class Characteristic2:
    """A 2-torsion point in doubled F2 coordinates."""

    g: int
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.g < 1:
            raise ValueError("genus must be positive")
        object.__setattr__(self, "top", _bits(self.top, self.g, "top"))
        object.__setattr__(self, "bottom", _bits(self.bottom, self.g, "bottom"))

    @classmethod
    def zero(cls, g: int) -> Characteristic2:
        return cls(g, (0,) * g, (0,) * g)

    @classmethod
    def unit(cls, g: int, i: int, row: str) -> Characteristic2:
        """``e_i`` placed in the ``"top"`` or ``"bottom"`` row."""
        e = tuple(int(j == i) for j in range(g))
        z = (0,) * g
        if row == "top":
            return cls(g, e, z)
        if row == "bottom":
            return cls(g, z, e)
        raise ValueError(f"row must be 'top' or 'bottom', not {row!r}")

    @classmethod
    def parse(cls, text: str) -> Characteristic2:
        """Inverse of :meth:`serialize`; the ``g:`` prefix is optional."""
        body = text.strip()
        g = None
        if ":" in body:
            head, body = body.split(":", 1)
            g = int(head)
        try:
            top_s, bottom_s = body.split("/")
        except ValueError:
            raise ValueError(f"cannot parse characteristic {text!r}") from None
        if g is None:
            g = len(top_s)
        return cls(g, tuple(int(c) for c in top_s), tuple(int(c) for c in bottom_s))

    def serialize(self) -> str:
        return f"{self.g}:{''.join(map(str, self.top))}/{''.join(map(str, self.bottom))}"

    def __str__(self) -> str:
        return self.serialize()

    def _check(self, other: Characteristic2) -> None:
        if self.g != other.g:
            raise GenusMismatchError(f"genus {self.g} vs {other.g}")

    def __add__(self, other: Characteristic2) -> Characteristic2:
        self._check(other)
        return Characteristic2(
            self.g,
            tuple(a ^ b for a, b in zip(self.top, other.top)),
            tuple(a ^ b for a, b in zip(self.bottom, other.bottom)),
        )

    __sub__ = __add__

    def is_zero(self) -> bool:
        return not any(self.top) and not any(self.bottom)


def weyl_pairing(a: Characteristic2, b: Characteristic2) -> int:
    """Symplectic pairing ``a.top . b.bottom + b.top . a.bottom (mod 2)``."""
    a._check(b)
    s = sum(x & y for x, y in zip(a.top, b.bottom))
    s += sum(x & y for x, y in zip(b.top, a.bottom))
    return s & 1


def q_std(c: Characteristic2) -> int:
    """Quadratic form of the divisor of ``theta[0;0]``: ``top . bottom (mod 2)``."""
    return sum(x & y for x, y in zip(c.top, c.bottom)) & 1


@dataclass(frozen=True)
class QuadraticFormF2:
    """``lambda -> q_std(lambda + shift) + constant``.

    ``shift`` is the translation taking the divisor of ``theta[0;0]`` to the
    symmetric theta divisor this form belongs to.  Every such form has the
    Weyl pairing as its polar form.
    """

    g: int
    shift: Characteristic2
    constant: int = 0

    def __post_init__(self) -> None:
        if self.shift.g != self.g:
            raise GenusMismatchError(f"shift has genus {self.shift.g}, form has {self.g}")
        if self.constant not in (0, 1):
            raise ValueError("constant must be a bit")

    @classmethod
    def standard(cls, g: int) -> QuadraticFormF2:
        return cls(g, Characteristic2.zero(g), 0)

    def __call__(self, c: Characteristic2) -> int:
        return form_eval(self, c)


def form_eval(q: QuadraticFormF2, c: Characteristic2) -> int:
    if c.g != q.g:
        raise GenusMismatchError(f"characteristic genus {c.g}, form genus {q.g}")
    return q_std(c + q.shift) ^ q.constant


def form_translate(q: QuadraticFormF2, a: Characteristic2) -> QuadraticFormF2:
    """The form ``lambda -> q(lambda + a)``."""
    if a.g != q.g:
        raise GenusMismatchError(f"translation genus {a.g}, form genus {q.g}")
    return QuadraticFormF2(q.g, q.shift + a, q.constant)


def iter_torsion(g: int) -> Iterator[Characteristic2]:
    for top in itertools.product((0, 1), repeat=g):
        for bottom in itertools.product((0, 1), repeat=g):
            yield Characteristic2(g, top, bottom)


def enumerate_torsion(g: int, bound: int = MAX_ENUM_GENUS) -> list[Characteristic2]:
    """All ``4**g`` characteristics, lexicographic in ``(top, bottom)``."""
    if g < 1:
        raise ValueError("genus must be positive")
    if g > bound:
        raise EnumerationBoundError(f"genus {g} exceeds enumeration bound {bound}")
    return list(iter_torsion(g))


def zero_count(q: QuadraticFormF2) -> int:
    return sum(1 for c in iter_torsion(q.g) if form_eval(q, c) == 0)


def even_zero_count(g: int) -> int:
    """``2^(g-1) (2^g + 1)``, the number of zeros of an even form."""
    return 2 ** (g - 1) * (2**g + 1)


def odd_zero_count(g: int) -> int:
    return 2 ** (g - 1) * (2**g - 1)
