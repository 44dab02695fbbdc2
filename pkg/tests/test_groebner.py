import random
from fractions import Fraction

import pytest

from dmodloc.bfunction import theta_projection
from dmodloc.groebner import (FreeModuleElement, ResourceLimitExceeded,
                              ResourceLimits, buchberger_left,
                              buchberger_module, eliminate_to_subalgebra,
                              gb_adapted_to_weight, ideal_equal,
                              initial_ideal_gens, interreduce,
                              left_normal_form, module_normal_form,
                              reduces_to_zero)
from dmodloc.orders import (Grevlex, WeightVector, component_last_order,
                            initial_form_w, ord_w)
from dmodloc.weyl import WeylContext
from support import rand_element


@pytest.fixture
def ctx():
    return WeylContext(["x"])


@pytest.fixture
def actx():
    return WeylContext(["x"], has_aux=True)


# -- normal form -------------------------------------------------------------

def test_normal_form_examples(ctx):
    x, dx = ctx.x(0), ctx.d(0)
    o = Grevlex(ctx)
    assert left_normal_form(dx, [dx], o).is_zero
    assert left_normal_form(x * dx, [x * dx + 3], o) == -3
    assert left_normal_form(x**2 * dx, [x * dx + 1], o) == -x


def test_normal_form_exactness(ctx):
    # p - r must be an exact ideal member even with rational leading coeffs
    x, dx = ctx.x(0), ctx.d(0)
    o = Grevlex(ctx)
    g = x * dx + Fraction(1, 2)
    r = left_normal_form(3 * x * dx, [g], o)
    assert r == Fraction(-3, 2)
    assert reduces_to_zero(3 * x * dx - r, [g], o)


# -- Buchberger for ideals -----------------------------------------------------

def test_buchberger_unit_ideal(ctx):
    x, dx = ctx.x(0), ctx.d(0)
    gb = buchberger_left([dx, x], Grevlex(ctx))
    assert [str(g) for g in gb.elements] == ["1"]


def test_buchberger_single_element(ctx):
    x, dx = ctx.x(0), ctx.d(0)
    for lam in (3, -7, Fraction(1, 2)):
        gb = buchberger_left([x * dx + lam], Grevlex(ctx))
        # canonical form clears denominators
        assert len(gb) == 1
        assert ideal_equal(list(gb.elements), [x * dx + lam])


def test_ex41_generating_sets_equal(actx):
    x, dx, v, dv = actx.x(0), actx.d(0), actx.v, actx.dv
    lam = 3
    a = [1 - x * v, x * (dx - v**2 * dv) + lam]
    b = [dx * x - dv * v + 1 + lam, 1 - x * v]
    assert ideal_equal(a, b)


def test_gb_idempotent_and_sound(actx):
    rng = random.Random(23)
    o = Grevlex(actx)
    for _ in range(25):
        gens = [rand_element(rng, actx, max_terms=2, max_exp=2)
                for _ in range(2)]
        gb = buchberger_left(gens, o)
        again = buchberger_left(list(gb.elements), o)
        assert [str(g) for g in gb.elements] == [str(g) for g in again.elements]
        for g in gens:
            assert gb.contains(g)


def test_gb_spair_spot_check(actx):
    rng = random.Random(29)
    o = Grevlex(actx)
    gens = [rand_element(rng, actx, max_terms=2, max_exp=2) for _ in range(2)]
    gb = buchberger_left(gens, o)
    elts = list(gb.elements)
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            mi, ci = o.leading_term(elts[i])
            mj, cj = o.leading_term(elts[j])
            lcm = tuple(max(a, b) for a, b in zip(mi, mj))
            qi = actx.element({tuple(a - b for a, b in zip(lcm, mi)): 1})
            qj = actx.element({tuple(a - b for a, b in zip(lcm, mj)): 1})
            s = (qi * elts[i]).scale(1 / ci) - (qj * elts[j]).scale(1 / cj)
            assert reduces_to_zero(s, elts, o)


def test_gb_determinism(actx):
    x, dx, v, dv = actx.x(0), actx.d(0), actx.v, actx.dv
    gens = [1 - x * v, x * (dx - v**2 * dv) - 7]
    one = buchberger_left(gens, Grevlex(actx))
    two = buchberger_left([g for g in gens], Grevlex(actx))
    assert [str(g) for g in one.elements] == [str(g) for g in two.elements]


def test_coprime_criterion_needs_commuting_supports():
    # {x + Dy, y}: the leading monomials are coprime but [x + Dy, y] = 1,
    # so skipping the pair would wrongly miss the unit ideal
    ctx = WeylContext(["x", "y"])
    x, y, dy = ctx.x(0), ctx.x(1), ctx.d(1)
    gb = buchberger_left([x + dy, y], Grevlex(ctx))
    assert [str(g) for g in gb.elements] == ["1"]


def test_resource_limits(actx):
    x, dx, v, dv = actx.x(0), actx.d(0), actx.v, actx.dv
    gens = [1 - x * v, x * (dx - v**2 * dv) - 7]
    with pytest.raises(ResourceLimitExceeded):
        buchberger_left(gens, Grevlex(actx), ResourceLimits(max_pairs=1))
    with pytest.raises(ResourceLimitExceeded):
        buchberger_left(gens, Grevlex(actx), ResourceLimits(max_degree=1))


def test_interreduce(ctx):
    x, dx = ctx.x(0), ctx.d(0)
    gens = [x * dx + 1, x**2 * dx**2 + 3 * x * dx + 1, x * dx + 1]
    reduced = interreduce(gens, Grevlex(ctx))
    assert ideal_equal(list(reduced), [x * dx + 1])
    assert len(reduced) == 1


# -- modules ------------------------------------------------------------------

def test_module_disjoint_components(ctx):
    dx = ctx.d(0)
    zero = ctx.zero()
    gens = [FreeModuleElement([dx, zero]), FreeModuleElement([zero, dx])]
    order = component_last_order(Grevlex(ctx), 1)
    gb = buchberger_module(gens, order)
    assert set(map(str, gb.elements)) == set(map(str, gens))


def test_module_single_generator(ctx):
    one, zero = ctx.one(), ctx.zero()
    order = component_last_order(Grevlex(ctx), 1)
    gb = buchberger_module([FreeModuleElement([one, zero])], order)
    assert len(gb) == 1
    assert all(e.support_components() != [1] for e in gb.elements)


def test_module_no_spurious_last_component(ctx):
    x = ctx.x(0)
    order = component_last_order(Grevlex(ctx), 1)
    gb = buchberger_module([FreeModuleElement([x, ctx.one()])], order)
    assert all(e.support_components() != [1] for e in gb.elements)


def test_module_normal_form_membership(ctx):
    x, dx = ctx.x(0), ctx.d(0)
    zero = ctx.zero()
    order = component_last_order(Grevlex(ctx), 1)
    gens = [FreeModuleElement([x * dx, ctx.one()]),
            FreeModuleElement([dx, zero])]
    gb = buchberger_module(gens, order)
    for g in gens:
        assert gb.contains(g)
    combo = gens[0].left_mul(x) + gens[1].left_mul(dx + 3)
    assert gb.contains(combo)


# -- weight-adapted bases -------------------------------------------------------

def test_zero_weight_matches_plain_gb(actx):
    x, dx, v, dv = actx.x(0), actx.d(0), actx.v, actx.dv
    w0 = WeightVector(actx, [0, 0, 0, 0])
    gens = [1 - x * v, x * dx - x * v**2 * dv - 7]
    adapted = gb_adapted_to_weight(gens, w0)
    plain = buchberger_left(gens, Grevlex(actx))
    assert set(map(str, adapted.elements)) == set(map(str, plain.elements))


def test_adapted_initial_ideal_ex41(actx):
    x, dx, v, dv = actx.x(0), actx.d(0), actx.v, actx.dv
    lam = 3
    w = WeightVector.integration(actx)
    basis = gb_adapted_to_weight([1 - x * v, x * (dx - v**2 * dv) + lam], w)
    ins = initial_ideal_gens(basis, w)
    expected = [initial_form_w(w, dx * x - dv * v + 1 + lam),
                initial_form_w(w, x * v)]
    assert ideal_equal(list(ins), expected)


def test_w_homogeneous_inputs_stay_homogeneous(actx):
    rng = random.Random(31)
    w = WeightVector.integration(actx)
    vi, dvi = actx.v_index, actx.dv_index
    for _ in range(20):
        gens = []
        for _ in range(2):
            d = rng.randint(-1, 1)
            terms = {}
            for _ in range(rng.randint(1, 3)):
                a = rng.randint(0, 2)
                b = a - d
                if b < 0:
                    a, b = a - d, a
                    a = max(a, 0)
                    b = a - d
                mono = [0] * actx.ngens
                mono[vi], mono[dvi] = max(b, 0), max(b, 0) - d
                if mono[dvi] < 0:
                    continue
                mono[0] = rng.randint(0, 1)
                mono[1] = rng.randint(0, 1)
                terms[tuple(mono)] = rng.randint(1, 3)
            if terms:
                gens.append(actx.element(terms))
        if not gens:
            continue
        basis = gb_adapted_to_weight(gens, w)
        for g in basis.elements:
            degs = {w.degree(m) for m in g.terms}
            assert len(degs) == 1


# -- elimination ----------------------------------------------------------------

def test_eliminate_examples(actx):
    x, dx, v, dv = actx.x(0), actx.d(0), actx.v, actx.dv
    sub = eliminate_to_subalgebra([x, dv * v])
    assert any(g == dv * v for g in sub)
    assert eliminate_to_subalgebra([dx]) == ()


def test_eliminate_ex41_theta_ideal(actx):
    # lambda = 3: the intersection with K[theta] is ((theta+1)(theta-3))
    x, dx, v, dv = actx.x(0), actx.d(0), actx.v, actx.dv
    lam = 3
    w = WeightVector.integration(actx)
    basis = gb_adapted_to_weight([1 - x * v, x * (dx - v**2 * dv) + lam], w)
    sub = eliminate_to_subalgebra(initial_ideal_gens(basis, w))
    assert sub
    acc = theta_projection(sub[0])
    for g in sub[1:]:
        acc = acc.gcd(theta_projection(g))
    expected = (Fraction(-3), Fraction(-2), Fraction(1))  # (t+1)(t-3)
    assert acc.monic().coeffs == expected


def test_eliminate_preserves_w_homogeneity(actx):
    x, v, dv = actx.x(0), actx.v, actx.dv
    w = WeightVector.integration(actx)
    gens = [x * v, v**2 * dv - 3 * v, actx.x(0) * actx.d(0) - v * dv + 4]
    sub = eliminate_to_subalgebra(gens)
    for g in sub:
        assert len({w.degree(m) for m in g.terms}) == 1
