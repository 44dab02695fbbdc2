import random

import pytest

from dmodloc.orders import (GT, LT, BlockOrder, Grevlex, Lex, ModuleOrder,
                            WeightRefined, WeightVector, component_last_order,
                            eliminate_spatial, initial_form_w, ord_w, w_degree)
from dmodloc.weyl import WeylContext
from support import rand_element


def mono(ctx, **exps):
    m = [0] * ctx.ngens
    names = list(ctx.names)
    for name, e in exps.items():
        m[names.index(name)] = e
    return tuple(m)


def test_grevlex_example():
    ctx = WeylContext(["x", "y"])
    o = Grevlex(ctx)
    assert o.compare(mono(ctx, x=2), mono(ctx, x=1, y=1)) == GT
    assert o.compare(mono(ctx, y=2), mono(ctx, x=1, y=1)) == LT


def test_weight_refined_example():
    ctx = WeylContext(["x"], has_aux=True)
    w = WeightVector.from_map(ctx, {ctx.names[ctx.v_index]: 1})
    o = WeightRefined(w, Grevlex(ctx))
    assert o.compare(mono(ctx, v=1), mono(ctx, x=2)) == GT


def test_block_elimination_example():
    ctx = WeylContext(["x"], has_aux=True)
    o = eliminate_spatial(ctx)
    assert o.compare(mono(ctx, x=1), mono(ctx, v=5, Dv=5)) == GT


def test_block_must_keep_pairs_together():
    ctx = WeylContext(["x"])
    with pytest.raises(ValueError):
        BlockOrder(ctx, [(0,), (1,)])


def test_compare_properties_random():
    rng = random.Random(5)
    ctx = WeylContext(["x", "y"], has_aux=True)
    orders = [Grevlex(ctx), Lex(ctx), eliminate_spatial(ctx),
              WeightRefined(WeightVector(ctx, [0, 0, 1, 1, 0, 0]), Grevlex(ctx))]
    def rand_mono():
        return tuple(rng.randint(0, 3) for _ in range(ctx.ngens))
    for o in orders:
        for _ in range(200):
            a, b, c = rand_mono(), rand_mono(), rand_mono()
            assert o.compare(a, b) == -o.compare(b, a)
            if o.compare(a, b) >= 0 and o.compare(b, c) >= 0:
                assert o.compare(a, c) >= 0
            prod_a = tuple(x + y for x, y in zip(a, c))
            prod_b = tuple(x + y for x, y in zip(b, c))
            assert o.compare(prod_a, prod_b) == o.compare(a, b)
            assert (o.compare(a, b) == 0) == (a == b)


def test_w_degree_additive():
    ctx = WeylContext(["x"], has_aux=True)
    w = WeightVector.integration(ctx)
    rng = random.Random(9)
    for _ in range(100):
        a = tuple(rng.randint(0, 4) for _ in range(ctx.ngens))
        b = tuple(rng.randint(0, 4) for _ in range(ctx.ngens))
        ab = tuple(x + y for x, y in zip(a, b))
        assert w_degree(w, ab) == w_degree(w, a) + w_degree(w, b)


def test_initial_form_examples():
    ctx = WeylContext(["x"], has_aux=True)
    x, dx, v, dv = ctx.x(0), ctx.d(0), ctx.v, ctx.dv
    w = WeightVector.integration(ctx)
    lam = 5
    assert initial_form_w(w, 1 - x * v) == -(x * v)
    assert initial_form_w(w, x * dx - x * v**2 * dv + lam) == -(x * v**2 * dv)
    whole = dx * x - dv * v + 1 + lam
    assert initial_form_w(w, whole) == whole


def test_initial_form_multiplicative():
    rng = random.Random(13)
    ctx = WeylContext(["x"], has_aux=True)
    w = WeightVector.integration(ctx)
    for _ in range(120):
        p = rand_element(rng, ctx)
        q = rand_element(rng, ctx)
        prod = p * q
        if prod.is_zero:
            continue
        assert initial_form_w(w, prod) == initial_form_w(w, p) * initial_form_w(w, q)


def test_initial_form_errors():
    ctx = WeylContext(["x"], has_aux=True)
    w = WeightVector.integration(ctx)
    with pytest.raises(ValueError):
        initial_form_w(w, ctx.zero())
    bad = WeightVector(ctx, [0, 1, 0, 0])  # pair sum 1, not graded
    with pytest.raises(ValueError):
        initial_form_w(bad, ctx.x(0))


def test_ord_w_examples():
    ctx = WeylContext(["x"], has_aux=True)
    x, v, dv = ctx.x(0), ctx.v, ctx.dv
    assert ord_w(v**2 * dv) == 1
    assert ord_w(1 - x * v) == 1
    assert ord_w(dv) == -1
    with pytest.raises(ValueError):
        ord_w(ctx.zero())


def test_weight_vector_validation():
    ctx = WeylContext(["x"], has_hom=True)
    with pytest.raises(ValueError):
        WeightVector(ctx, [0, -1, 0])       # pair sum negative
    with pytest.raises(ValueError):
        WeightVector(ctx, [0, 0, 1])        # h must be 0
    WeightVector(ctx, [1, 0, 0])


def test_module_order_priorities():
    ctx = WeylContext(["x"])
    base = Grevlex(ctx)
    o = component_last_order(base, 2)
    m = (0,) * ctx.ngens
    big = mono(ctx, x=9, Dx=9)
    # any monomial in an eliminated component beats any in component 2
    assert o.compare((0, m), (2, big)) == GT
    assert o.compare((1, m), (2, big)) == GT
    assert o.compare((0, m), (1, big)) == GT
    with pytest.raises(ValueError):
        ModuleOrder(base, (0, 0, 1))
