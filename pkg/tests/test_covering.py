import itertools

import pytest

from prymlab.char2 import Characteristic2, form_eval, iter_torsion, weyl_pairing
from prymlab.covering import (
    CoverContext,
    classify_vanishing_orbits,
    distinguished_points,
    kernel_norm_structure,
    norm_char,
    prym_embed_char,
    pullback_char,
    weyl_annihilator,
)
from prymlab.errors import EnumerationBoundError


@pytest.mark.parametrize("g", [2, 3])
def test_maps_are_linear(g):
    ctx = CoverContext(g)
    base = list(iter_torsion(g))
    for a, b in itertools.product(base[:16], repeat=2):
        assert pullback_char(ctx, a + b) == pullback_char(ctx, a) + pullback_char(ctx, b)
    up = list(iter_torsion(ctx.g_tilde))[:64]
    for a, b in itertools.product(up, repeat=2):
        assert norm_char(ctx, a + b) == norm_char(ctx, a) + norm_char(ctx, b)


@pytest.mark.parametrize("g", [2, 3])
def test_norm_of_pullback_is_doubling(g):
    ctx = CoverContext(g)
    zero = Characteristic2.zero(g)
    assert all(norm_char(ctx, pullback_char(ctx, c)) == zero for c in iter_torsion(g))


@pytest.mark.parametrize("g", [2, 3])
def test_projection_formula(g):
    # e(pi^* x, y) = e(x, Nm y)
    ctx = CoverContext(g)
    for x in iter_torsion(g):
        px = pullback_char(ctx, x)
        for y in itertools.islice(iter_torsion(ctx.g_tilde), 0, None, 7):
            assert weyl_pairing(px, y) == weyl_pairing(x, norm_char(ctx, y))


@pytest.mark.parametrize("g", [2, 3])
def test_subgroup_sizes_and_duality(g):
    ctx = CoverContext(g)
    assert len(ctx.pullback_image) == 2 ** (2 * g - 1)
    assert len(ctx.P2) == 4 ** (g - 1)
    assert len(ctx.B2) == 4**g
    assert ctx.P2 <= ctx.B2
    assert weyl_annihilator(ctx.P2, ctx.g_tilde) == ctx.B2
    zero = Characteristic2.zero(g)
    assert all(norm_char(ctx, prym_embed_char(ctx, c)) == zero for c in iter_torsion(g - 1))


def test_distinguished_points():
    ctx = CoverContext(2)
    mu, l1, l2 = distinguished_points(ctx)
    assert l2 == mu + l1
    assert weyl_pairing(mu, l1) == 1
    assert all(x in ctx.B2 for x in (l1, l2))
    assert form_eval(ctx.q0, l1) == 0


@pytest.mark.parametrize("g", [2, 3])
def test_classification_by_exhaustive_scan(g):
    ctx = CoverContext(g)
    cls = classify_vanishing_orbits(ctx)
    # independent scan: alpha with q0 vanishing on all of alpha + P2
    scan = {
        a for a in ctx.B2 if all(form_eval(ctx.q0, a + r) == 0 for r in ctx.P2)
    }
    assert scan == set(cls.solutions)
    assert len(cls.orbits) == 3
    data = cls.to_json()
    assert data["solutions"] == 12 * 4 ** (g - 2)
    assert all(len(c) == 4 ** (g - 1) for c in data["cosets"])


def test_genus2_cosets_fixture():
    cosets = classify_vanishing_orbits(CoverContext(2)).to_json()["cosets"]
    assert cosets[0] == ["3:000/000", "3:000/011", "3:011/000", "3:011/011"]


def test_kernel_record():
    rec = kernel_norm_structure(CoverContext(3))
    assert rec.holds
    assert len(rec.kernel_in_B2) == 32


def test_bounds():
    with pytest.raises(ValueError):
        CoverContext(1)
    with pytest.raises(EnumerationBoundError):
        kernel_norm_structure(CoverContext(5))
