import random
from fractions import Fraction

import pytest

from dmodloc.weyl import (ContextMismatchError, WeylContext, WeylElement,
                          anti_normal_order_v, dehomogenize, homogenize,
                          poly_diff, recompose_anti_words, transfer)
from support import naive_mul, rand_element


@pytest.fixture
def ctx():
    return WeylContext(["x"])


@pytest.fixture
def actx():
    return WeylContext(["x"], has_aux=True)


def test_defining_relation(ctx):
    x, dx = ctx.x(0), ctx.d(0)
    assert dx * x == x * dx + 1
    assert x * dx == x * dx


def test_normal_order_of_aux_square(actx):
    v, dv = actx.v, actx.dv
    expected = v**2 * dv**2 + 4 * v * dv + 2
    assert dv**2 * v**2 == expected
    # cross-check against the one-commutator-at-a-time reference
    assert naive_mul(dv**2, v**2) == expected


def test_add_negate_scale(ctx, actx):
    x, dx = ctx.x(0), ctx.d(0)
    assert ((x * dx) + (-(x * dx))).is_zero
    assert (x * dx + 1).scale(2) == 2 * x * dx + 2
    xa, v = actx.x(0), actx.v
    assert (1 - xa * v) + (xa * v) == actx.one()


def test_context_mismatch(ctx):
    other = WeylContext(["y"])
    with pytest.raises(ContextMismatchError):
        ctx.x(0) + other.x(0)
    with pytest.raises(ContextMismatchError):
        ctx.x(0) * other.x(0)


def test_homogenize_examples(ctx):
    x, dx = ctx.x(0), ctx.d(0)
    hctx = ctx.homogenized()
    assert homogenize(x * dx + 1) == hctx.x(0) * hctx.d(0) + hctx.h ** 2
    assert homogenize(dx) == hctx.d(0)
    assert dehomogenize(homogenize(x * dx + 1)) == x * dx + 1


def test_homogenized_commutation():
    hctx = WeylContext(["x", "y"], has_hom=True)
    for i in range(2):
        for j in range(2):
            bracket = hctx.d(i) * hctx.x(j) - hctx.x(j) * hctx.d(i)
            assert bracket == (hctx.h ** 2 if i == j else hctx.zero())


def test_mul_associative_random():
    rng = random.Random(7)
    for shape in [WeylContext(["x"]), WeylContext(["x", "y"], has_aux=True),
                  WeylContext(["x"], has_hom=True)]:
        for _ in range(60):
            p = rand_element(rng, shape, fractions=True)
            q = rand_element(rng, shape)
            r = rand_element(rng, shape)
            assert (p * q) * r == p * (q * r)


def test_mul_against_reference():
    rng = random.Random(11)
    for shape in [WeylContext(["x", "y"]), WeylContext(["x"], has_aux=True),
                  WeylContext(["x"], has_aux=True, has_hom=True)]:
        for _ in range(40):
            p = rand_element(rng, shape)
            q = rand_element(rng, shape)
            assert p * q == naive_mul(p, q)


def test_anti_normal_order_examples(actx):
    v, dv = actx.v, actx.dv
    zero_mono = (0,) * actx.ngens
    words = anti_normal_order_v(v**2 * dv**2)
    assert words == [(Fraction(1), 2, 2, zero_mono),
                     (Fraction(-4), 1, 1, zero_mono),
                     (Fraction(2), 0, 0, zero_mono)]
    assert anti_normal_order_v(v * dv) == [(Fraction(1), 1, 1, zero_mono),
                                           (Fraction(-1), 0, 0, zero_mono)]
    assert anti_normal_order_v(dv) == [(Fraction(1), 1, 0, zero_mono)]


def test_anti_normal_order_requires_aux(ctx):
    with pytest.raises(ValueError):
        anti_normal_order_v(ctx.x(0))


def test_anti_normal_order_roundtrip():
    rng = random.Random(3)
    actx = WeylContext(["x", "y"], has_aux=True)
    for _ in range(60):
        p = rand_element(rng, actx, max_terms=4, fractions=True)
        assert recompose_anti_words(actx, anti_normal_order_v(p)) == p


def test_transfer_roundtrip(actx):
    plain = actx.without_aux()
    p = plain.x(0) * plain.d(0) + 2
    q = transfer(p, actx)
    assert q == actx.x(0) * actx.d(0) + 2
    assert transfer(q, plain) == p
    with pytest.raises(ValueError):
        transfer(actx.v, plain)


def test_poly_diff(ctx):
    x = ctx.x(0)
    assert poly_diff(x**3 + 2 * x, 0) == 3 * x**2 + 2
    assert poly_diff(ctx.one(), 0).is_zero


def test_str_is_sorted_and_signed():
    ctx = WeylContext(["x", "y"])
    x, y, dx, dy = ctx.x(0), ctx.x(1), ctx.d(0), ctx.d(1)
    assert str(-3 * x * dx - 2 * y * dy - 18) == "-3*x*Dx-2*y*Dy-18"
    assert str(ctx.zero()) == "0"
    assert str(ctx.constant(Fraction(-1, 2))) == "-1/2"


def test_fresh_aux_name_avoids_user_names():
    ctx = WeylContext(["v", "h"], has_aux=True, has_hom=True)
    assert ctx.names[ctx.v_index] not in ("v", "Dv"[1:])
    assert ctx.names[ctx.v_index] != "v"
    assert ctx.names[ctx.h_index] != "h"
    # the pair still satisfies the Weyl relation
    assert ctx.dv * ctx.v == ctx.v * ctx.dv + ctx.h ** 2
