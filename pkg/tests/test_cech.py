import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuboid_cech.acceptance import random_dsl_cochain, random_dsl_node
from cuboid_cech.cech import (
    Cochain,
    CochainError,
    coboundary,
    cochain,
    cochain_from_json,
    cochain_to_json,
    cocycle_decomposition,
    cocycle_from_phi,
    face_restrict,
    index_sets,
    is_cocycle,
    parse_key,
    phi_map,
    zero_cochain,
)
from cuboid_cech.fnexpr import ONE, ZERO, CoordIsInf, CoordLess, equiv_decide, fn, naive_extend, pin, xor
from cuboid_cech.ordinals import INF, OMEGA
from cuboid_cech.space import enumerate_truncated


def example_cocycle():
    return cochain(2, 1, {"01": ONE, "02": ONE})


def test_index_sets_are_lexicographic():
    assert index_sets(3, 2) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert parse_key("023") == (0, 2, 3)


def test_coboundary_two_terms():
    f = cochain(1, 0, {"0": CoordLess(0, 3), "1": CoordLess(1, 5)})
    df = coboundary(f)
    for x in enumerate_truncated({0, 1}, 2, 8):
        assert df["01"](x) == f["0"](x) ^ f["1"](x)


def test_coboundary_rejects_top_degree():
    with pytest.raises(CochainError):
        coboundary(zero_cochain(2, 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(2, 0), (3, 0), (3, 1)]))
def test_d_squared_vanishes(seed, nk):
    n, k = nk
    f = random_dsl_cochain(random.Random(seed), n, k)
    dd = coboundary(coboundary(f))
    for A, e in dd.entries.items():
        assert all(e(x) == 0 for x in enumerate_truncated(A, n + 1, 3))


def test_cocycle_examples():
    assert is_cocycle(zero_cochain(2, 1)).holds
    assert is_cocycle(example_cocycle()).holds


def test_naive_extension_of_example_is_not_a_cocycle():
    f = example_cocycle()
    ext = Cochain(2, 1, {A: naive_extend(e, (0, 0, 0), (0, 0, 1)) for A, e in f.entries.items()})
    v = is_cocycle(ext)
    assert not v.holds and v.key == (0, 1, 2)
    assert v.witness[2] is not INF and not isinstance(v.witness[2], int)


def test_face_restrict_examples():
    f = cochain(2, 1, {"01": CoordIsInf(2), "02": CoordLess(1, 5), "12": ONE})
    assert face_restrict(f, (0, 1)).node == ONE
    assert face_restrict(f, (0, 2)).node == ZERO
    assert face_restrict(f, (1, 2)).node == ONE
    with pytest.raises(CochainError):
        face_restrict(f, (0,))


def test_phi_map_examples():
    f = example_cocycle()
    assert phi_map(f, (0, 1), {2: 4}).node == ONE
    g = cochain(2, 1, {"01": CoordLess(2, 6)})
    r, p = face_restrict(g, (0, 1)), phi_map(g, (0, 1), {2: INF})
    assert equiv_decide(r, p).kind == "equal"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_restriction_of_a_coboundary(seed):
    rng = random.Random(seed)
    g = random_dsl_cochain(rng, 2, 0)
    B = (0, 1)
    lhs = face_restrict(coboundary(g), B)
    rhs = fn(xor(*(pin(g[(b,)], {2: INF}).node for b in B)), B, 3)
    for x in enumerate_truncated(B, 3, 4):
        assert lhs(x) == rhs(x)


def test_cocycle_decomposition_sums_to_entry():
    f = coboundary(random_dsl_cochain(random.Random(3), 2, 0))
    parts = cocycle_decomposition(f, (0, 1), 2)
    for x in enumerate_truncated((0, 1, 2), 3, 4):
        assert f[(0, 1)](x) == parts[0](x) ^ parts[1](x)


def test_cocycle_from_phi_constant_family():
    phi = fn(CoordLess(0, 3), (0, 1), 3)

    # the zero decomposition does not sum to phi, so the contract check must reject it
    with pytest.raises(CochainError):
        cocycle_from_phi(phi, (0, 1), lambda s: fn(ZERO, (1 - s,), 3))

    def good(s):
        return fn(CoordLess(0, 3), (0,), 3) if s == 1 else fn(ZERO, (1,), 3)

    f = cocycle_from_phi(phi, (0, 1), good)
    assert is_cocycle(f, "bounded", 3).holds
    assert face_restrict(f, (0, 1))((1, 9, INF)) == 1


def test_cocycle_from_phi_degenerate_full_set():
    phi = fn(CoordLess(1, OMEGA), (0, 1), 2)
    f = cocycle_from_phi(phi, (0, 1), lambda s: fn(ZERO, (1 - s,), 2))
    assert list(f.entries) == [(0, 1)]
    assert is_cocycle(f).holds


def test_json_roundtrip_and_validation():
    f = random_dsl_cochain(random.Random(1), 3, 1)
    data = cochain_to_json(f)
    assert data["schema"] == "cuboid-cech/cochain@1"
    assert cochain_from_json(json.dumps(data)) == f
    bad = dict(data, entries={k: v for k, v in data["entries"].items() if k != "01"})
    with pytest.raises(CochainError):
        cochain_from_json(bad)


def test_cochain_rejects_bad_domain():
    with pytest.raises(CochainError):
        Cochain(1, 0, {(0,): fn(ONE, (0,), 2), (1,): fn(ONE, (0,), 2)})
