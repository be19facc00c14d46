import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuboid_cech.acceptance import MODIFICATION_TABLE, TRIVIALIZER_TABLE, random_dsl_cochain
from cuboid_cech.cardinals import KappaTuple
from cuboid_cech.cech import coboundary, cochain, is_cocycle, zero_cochain
from cuboid_cech.fnexpr import ONE
from cuboid_cech.fubini import (
    FubiniError,
    check_condition2,
    condition2_witness,
    condition3_count,
    condition3_profile,
    embed,
    fubini_exists,
    modification_table,
    modify,
    stabilizes,
    trivialize,
    trivializer_table,
)
from cuboid_cech.ordinals import INF
from cuboid_cech.partitions import FiniteTable, MinRule, PartitionError, VminRule, partition_by_name
from cuboid_cech.space import PointError, enumerate_truncated

MIN, VMIN = MinRule(), VminRule()


@pytest.mark.parametrize("p, x, want", [(MIN, (2, 7, INF), 0), (MIN, (4, 4, 9), 0), (VMIN, (3, 5, 2), 2)])
def test_assign_examples(p, x, want):
    assert p.assign(x) == want


@pytest.mark.parametrize("p", [MIN, VMIN])
def test_assign_rejects_all_infinite(p):
    with pytest.raises(PointError):
        p.assign((INF, INF))


def test_finite_table_and_lookup_errors():
    t = FiniteTable({(0, INF): 1})
    assert t.assign((0, INF)) == 1
    with pytest.raises(PartitionError):
        t.assign((1, INF))
    with pytest.raises(PartitionError):
        partition_by_name("max")


@pytest.mark.parametrize(
    "kappa, k, exists",
    [((0, 0, 0, 1), 1, True), ((0, 0, 1, 1), 1, False), ((0, 1, 1), 1, True), ((0, 1, 2), 1, False), ((3, 3), 1, True), ((0, 0), -1, False)],
)
def test_fubini_exists(kappa, k, exists):
    v = fubini_exists(KappaTuple(kappa), k)
    assert v.exists is exists
    if exists:
        assert v.citation


def test_fubini_exists_rejects_out_of_range():
    with pytest.raises(FubiniError):
        fubini_exists(KappaTuple((0, 1)), 2)


def test_condition2_min_example():
    N = condition2_witness(MIN, {0, 2}, (3, INF, 5), KappaTuple((0, 0, 1)))
    assert N.exceptions == {1: frozenset(range(4))}
    assert check_condition2(MIN, N, 200) is None


def test_condition2_full_set_is_vacuous():
    N = condition2_witness(MIN, {0, 1, 2}, (3, 1, 5))
    assert not N.exceptions and not N.floors


def test_condition2_vmin_example():
    N = condition2_witness(VMIN, {0}, (4, INF))
    assert N.exceptions[1] and len(N.exceptions[1]) < 1000
    for y1 in itertools.chain(range(1001), [INF]):
        if y1 not in N.exceptions[1]:
            assert VMIN.assign((4, y1)) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.one_of(st.integers(0, 30), st.just(INF)), min_size=2, max_size=4), st.integers(0, 1000))
def test_condition2_min_sampled(x, seed):
    x = tuple(x)
    A = frozenset(i for i, v in enumerate(x) if v is not INF)
    if not A or len(A) == len(x):
        return
    N = condition2_witness(MIN, A, x)
    assert check_condition2(MIN, N, 100, seed) is None


def test_condition3_examples():
    assert condition3_count(MIN, 0, (5,), 100) == 6
    assert condition3_count(VMIN, 1, (5,), 100) == 5
    # the only x_2 values winning against (3, 7) are 0, 1, 2: a tie at 3 goes to index 0
    assert condition3_count(MIN, 2, (3, 7), 100) == 3


@pytest.mark.parametrize("p", [MIN, VMIN])
def test_condition3_stabilizes_for_n1(p):
    for j in (0, 1):
        for v in range(40):
            assert stabilizes(condition3_profile(p, j, (v,), [100, 1000]))


def test_upgrade_identity():
    for p in (MIN, VMIN):
        for k in (0, 1):
            for A in itertools.chain.from_iterable(itertools.combinations(range(3), r) for r in range(k + 1, 3)):
                for x in enumerate_truncated(A, 3, 4):
                    i = p.assign(x)
                    if i not in A:
                        assert x[i] is not INF


def test_partition_totality():
    for p in (MIN, VMIN):
        pts = list(enumerate_truncated((), 3, 4))
        assert all(0 <= p.assign(x) < 3 for x in pts)


def test_trivializer_table_cells():
    got = trivializer_table(3, 1)
    assert got == TRIVIALIZER_TABLE
    assert got[1][2] == "f_{012}" and got[5][1] == "f_{023}" and got[0][1] == "0"


def test_modification_table_cells_except_the_known_misprint():
    got, printed = modification_table(3, 1), MODIFICATION_TABLE
    assert got[1][2] == "f_{01}+f_{12}" and got[1][4] == "f_{03}+f_{23}" and got[0][1] == "f_{01}"
    diffs = [(r, c) for r in range(6) for c in range(1, 5) if got[r][c] != printed[r][c]]
    assert diffs == [(0, 3)]
    # the rule applied to f^Mod_{01} on Y_2 gives f_{02}+f_{12}
    assert got[0][3] == "f_{02}+f_{12}"


def test_zero_maps_to_zero():
    z2, z1 = zero_cochain(3, 2), zero_cochain(3, 1)
    for e in trivialize(z2, MIN).entries.values():
        assert all(e(x) == 0 for x in enumerate_truncated(e.domain, 4, 2))
    for e in modify(z1, MIN).entries.values():
        assert all(e(x) == 0 for x in enumerate_truncated(e.domain, 4, 2))
    for e in embed(zero_cochain(2, 1), (0, 0, 0), (0, 0, 1), MIN).entries.values():
        assert all(e(x) == 0 for x in enumerate_truncated(e.domain, 3, 3))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([MIN, VMIN]))
def test_trivializer_of_a_coboundary(seed, p):
    f = coboundary(random_dsl_cochain(random.Random(seed), 2, 0))
    dg = coboundary(trivialize(f, p))
    for A in f.keys():
        for x in enumerate_truncated(A, 3, 4):
            assert dg[A](x) == f[A](x)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([MIN, VMIN]))
def test_modification_is_a_cocycle(seed, p):
    f = random_dsl_cochain(random.Random(seed), 2, 1)
    assert is_cocycle(modify(f, p), "bounded", 3).holds


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_modification_of_a_cocycle_is_pointwise_unchanged(seed):
    f = coboundary(random_dsl_cochain(random.Random(seed), 2, 0))
    fm = modify(f, MIN)
    for A in f.keys():
        for x in enumerate_truncated(A, 3, 4):
            assert fm[A](x) == f[A](x)


def test_embed_identity_when_lambda_equals_kappa():
    f = cochain(2, 1, {"01": ONE, "02": ONE})
    g = embed(f, (0, 0, 0), (0, 0, 0), MIN)
    for A in f.keys():
        assert all(g[A](x) == f[A](x) for x in enumerate_truncated(A, 3, 4))


def test_embed_repairs_the_example():
    f = cochain(2, 1, {"01": ONE, "02": ONE})
    g = embed(f, (0, 0, 0), (0, 0, 1), MIN)
    assert is_cocycle(g).holds
    # values at lambda-points are kept
    for A in f.keys():
        assert all(g[A](x) == f[A](x) for x in enumerate_truncated(A, 3, 4))
