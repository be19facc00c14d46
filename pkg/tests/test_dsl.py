import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuboid_cech import fnexpr as fx
from cuboid_cech.acceptance import random_dsl_node
from cuboid_cech.cardinals import Aleph, KappaTuple, Pow, TwoPow
from cuboid_cech.fnexpr import (
    ONE,
    ZERO,
    CoordEven,
    CoordIn,
    CoordIsInf,
    CoordLess,
    Delta,
    DiscontinuityError,
    ExprError,
    PinCoord,
    Xor,
    add,
    card_CA,
    continuity_witness,
    equiv_decide,
    fn,
    naive_extend,
    parse_sexpr,
    pin,
    restrict_to,
    to_sexpr,
)
from cuboid_cech.ordinals import INF, OMEGA, add_finite, from_terms
from cuboid_cech.space import enumerate_truncated, in_DA, neighborhood_contains, sample_neighborhood


def test_delta_examples():
    d = fn(Delta(frozenset({2})), (), 3)
    assert d((2, 2, 2)) == 1
    assert d((2, 2, INF)) == 0
    assert all(d((2, 2, y)) == 0 for y in range(1000) if y != 2)


def test_xor_of_ones_is_zero():
    assert fn(Xor((ONE, ONE)), (), 2)((1, INF)) == 0


def test_atoms_at_infinity():
    x = (INF, 0)
    assert fn(CoordLess(0, 5), (), 2)(x) == 0
    assert fn(CoordIn(0, frozenset({0, 1})), (), 2)(x) == 0
    assert fn(CoordEven(0), (1,), 2)(x) == 0
    assert fn(CoordIsInf(0), (1,), 2)(x) == 1


def test_eval_rejects_points_off_the_face():
    f = fn(ONE, (0,), 2)
    with pytest.raises(ExprError):
        f((INF, 3))


def test_add_examples():
    f, g = fn(CoordLess(0, 3), (0,), 2), fn(CoordLess(1, 3), (1,), 2)
    assert add(f, g).domain == frozenset({0, 1})
    assert all(add(f, f)(x) == 0 for x in enumerate_truncated({0}, 2, 4))
    assert add(fn(ONE, (), 1), fn(ZERO, (), 1))((3,)) == 1


def _sampled_constancy(f, x, seed=0, count=300):
    N = continuity_witness(f, x).neighborhood(x)
    base = f(x)
    for y in sample_neighborhood(N, seed, count):
        if in_DA(y, f.domain):
            assert f(y) == base, (f, x, y)
    return N


def test_witness_threshold_form_for_infinite_cutoff():
    f = fn(CoordLess(0, OMEGA), (), 2)
    w = continuity_witness(f, (INF, 3))
    assert w.floors == {0: OMEGA} and not w.exceptions
    N = _sampled_constancy(f, (INF, 3), count=1000)
    assert not neighborhood_contains(N, (17, 3))


def test_witness_for_delta_singleton():
    f = fn(Delta(frozenset({5})), (), 2)
    w = continuity_witness(f, (5, INF))
    assert w.exceptions == {1: frozenset({5})}
    _sampled_constancy(f, (5, INF))


def test_witness_for_constant_is_empty():
    w = continuity_witness(fn(ONE, (), 3), (1, INF, INF))
    assert not w.exceptions and not w.floors


def test_witness_rejects_isolated_points():
    with pytest.raises(ExprError):
        continuity_witness(fn(ONE, (), 2), (1, 2))


def test_isinf_on_a_free_axis_is_discontinuous():
    with pytest.raises(DiscontinuityError):
        continuity_witness(fn(CoordIsInf(1), (), 2), (3, INF))


def test_equiv_examples():
    assert equiv_decide(fn(CoordLess(0, 5), (), 1), fn(Xor((CoordLess(0, 5),)), (), 1)).kind == "equal"
    v = equiv_decide(fn(ZERO, (0,), 2), fn(CoordEven(0), (0,), 2))
    assert v.kind == "not_equal"
    assert fn(CoordEven(0), (0,), 2)(v.witness) == 1
    v = equiv_decide(fn(Delta(frozenset({2})), (), 3), fn(ZERO, (), 3))
    assert v.kind == "not_equal" and v.witness == (2, 2, 2)


def test_naive_extension_examples():
    f = fn(ONE, (0, 1), 3)
    same = naive_extend(f, (0, 0, 0), (0, 0, 0))
    assert equiv_decide(same, f).kind == "equal"
    f02 = naive_extend(fn(ONE, (0, 2), 3), (0, 0, 0), (0, 0, 1))
    assert f02((0, INF, OMEGA)) == 0
    assert f02((0, INF, add_finite(OMEGA, 5))) == 0
    assert f02((0, INF, 3)) == 1


def test_naive_extension_out_of_range_on_the_domain_is_zero():
    f = fn(CoordLess(0, 100), (0, 2), 3)
    ext = naive_extend(f, (0, 0, 0), (0, 0, 2))
    assert ext((4, 1, from_terms([(1, 3)]))) == 0
    assert ext((4, 1, 9)) == 1


def test_naive_extension_rejects_length_mismatch():
    with pytest.raises(ExprError):
        naive_extend(fn(ONE, (0,), 2), (0, 0, 0), (0, 0, 1))


def test_restrict_examples():
    f = fn(CoordLess(1, 4), (), 2)
    r = restrict_to(f, (0,))
    assert r.domain == frozenset({0})
    assert restrict_to(r, (0,)) == r
    assert all(r(x) == f(x) for x in enumerate_truncated({0}, 2, 6))
    with pytest.raises(ExprError):
        restrict_to(fn(ONE, (0, 1), 2), (0,))


@pytest.mark.parametrize(
    "A, want",
    [({0, 1, 2}, TwoPow(2)), (set(), Aleph(2)), ({1}, Pow(Aleph(2), Aleph(1)))],
)
def test_card_CA(A, want):
    assert card_CA(KappaTuple((0, 1, 2)), A) == want


@pytest.mark.parametrize(
    "text",
    ["(xor (less 0 w) (even 1))", "(delta 0 2 5)", "(pin 1 inf (isinf 1))", "(piecewise min 0 1 (less 2 w+1))", "(not (in 0 1 3))"],
)
def test_sexpr_roundtrip(text):
    node = parse_sexpr(text)
    assert parse_sexpr(to_sexpr(node)) == node


def test_sexpr_rejects_garbage():
    with pytest.raises(ExprError):
        parse_sexpr("(frobnicate 1)")
    with pytest.raises(ExprError):
        parse_sexpr("(xor 1")


# -- properties ------------------------------------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_random_sexpr_roundtrip(seed):
    node = random_dsl_node(random.Random(seed), 3, 3)
    assert parse_sexpr(to_sexpr(node)) == node


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_witness_soundness_on_random_expressions(seed):
    rng = random.Random(seed)
    f = fn(random_dsl_node(rng, 3, 2), (), 3)
    x = (rng.choice([0, 3, OMEGA]), INF, rng.choice([INF, 1, 7]))
    _sampled_constancy(f, x, seed, 40)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_restrict_coherence(seed):
    rng = random.Random(seed)
    f = fn(random_dsl_node(rng, 3, 2), (), 3)
    r = restrict_to(f, (0, 2))
    assert all(r(x) == f(x) for x in enumerate_truncated({0, 2}, 3, 3))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_addition_is_a_characteristic_two_ring(seed):
    rng = random.Random(seed)
    f, g, h = (fn(random_dsl_node(rng, 2, 2), (), 2) for _ in range(3))
    for x in enumerate_truncated((), 2, 4):
        assert add(f, g)(x) == add(g, f)(x)
        assert add(add(f, g), h)(x) == add(f, add(g, h))(x)
        assert add(f, f)(x) == 0


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_equiv_is_reflexive(seed):
    f = fn(random_dsl_node(random.Random(seed), 3, 2), (), 3)
    assert equiv_decide(f, f).kind != "not_equal"


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 5))
def test_pinning_commutes_with_evaluation(seed, v):
    rng = random.Random(seed)
    f = fn(random_dsl_node(rng, 3, 2), (1,), 3)
    p = pin(f, {1: v})
    for x in enumerate_truncated((), 3, 3):
        if x[1] == v or x[1] is INF:
            continue
        y = (x[0], v, x[2])
        if y[0] is INF and y[2] is INF:
            continue
        assert p(x) == f(y)
    assert fn(PinCoord(1, v, f.node), (), 3)((0, INF, 0)) == f((0, v, 0))
