import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuboid_cech import _kernels
from cuboid_cech.acceptance import random_dsl_cochain
from cuboid_cech.cech import coboundary
from cuboid_cech.oracle import (
    CapacityError,
    FiniteModel,
    Grid,
    betti,
    coboundary_matrix,
    evaluate_on_grid,
    fuzz_identities,
    gf2_nullspace,
    gf2_rank_dense,
    model_space_dim,
    random_cocycle,
    top_quotient_dim,
    trivializer_defect,
)


def rank_by_python_ints(mat) -> int:
    """Independent GF(2) rank: rows as Python integers, xor-basis insertion."""
    basis = {}
    for row in np.asarray(mat, dtype=np.uint8):
        v = int("".join(map(str, row[::-1])) or "0", 2)
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def class_count(sizes, A) -> int:
    """Brute force: D_A points with m_j - 1 and infinity identified off A."""
    INF = -1
    axes = [range(m) if i in A else list(range(m)) + [INF] for i, m in enumerate(sizes)]
    seen = set()
    for x in itertools.product(*axes):
        seen.add(tuple(sizes[i] - 1 if (v == INF and i not in A) else v for i, v in enumerate(x)))
    return len(seen)


@pytest.mark.parametrize("sizes, A, want", [((2, 2), {0}, 4), ((2, 2), {0, 1}, 4), ((3, 2, 2), set(), 12)])
def test_model_space_dim(sizes, A, want):
    assert model_space_dim(FiniteModel(sizes), A) == want == class_count(sizes, A)


@pytest.mark.parametrize("sizes, want", [((2, 2), [4, 0]), ((3, 3), [9, 0]), ((2, 2, 2), [8, 0, 0])])
def test_betti_examples(sizes, want):
    assert betti(FiniteModel(sizes)) == want


@pytest.mark.parametrize("sizes, want", [((2, 2), 1), ((3, 3), 4), ((2, 3), 2)])
def test_top_quotient_examples(sizes, want):
    assert top_quotient_dim(sizes) == want


def test_betti_matches_independent_rank():
    for sizes in [(2, 3), (3, 2, 2)]:
        model = FiniteModel(sizes)
        for k in range(len(sizes) - 1):
            mat, _ = coboundary_matrix(model, k)
            assert gf2_rank_dense(mat) == rank_by_python_ints(mat)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 70), st.integers(1, 140), st.integers(0, 10**6))
def test_rank_backends_agree_with_reference(rows, cols, seed):
    mat = np.random.default_rng(seed).integers(0, 2, size=(rows, cols), dtype=np.uint8)
    ref = rank_by_python_ints(mat)
    packed = _kernels.pack_rows(mat)
    assert _kernels.gf2_rank(packed, cols, "numpy") == ref
    if _kernels.njit is not None:
        assert _kernels.gf2_rank(packed, cols, "numba") == ref


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 200), st.integers(1, 130), st.integers(0, 10**6))
def test_pack_roundtrip(rows, cols, seed):
    mat = np.random.default_rng(seed).integers(0, 2, size=(rows, cols), dtype=np.uint8)
    assert np.array_equal(_kernels.unpack_rows(_kernels.pack_rows(mat), cols), mat)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 400), st.integers(1, 5), st.integers(0, 10**6))
def test_min_assign_backends_agree(npts, length, seed):
    rng = np.random.default_rng(seed)
    sizes = rng.integers(2, 5, size=length)
    pts = rng.integers(0, 5, size=(npts, length)).clip(max=sizes)
    ref = []
    for row in pts:
        finite = [(v, i) for i, v in enumerate(row) if v < sizes[i]]
        ref.append(min(finite)[1] if finite else -1)
    assert list(_kernels.min_assign(pts, sizes, "numpy")) == ref
    if _kernels.njit is not None:
        assert list(_kernels.min_assign(pts, sizes, "numba")) == ref


def test_nullspace_is_a_kernel():
    mat = np.random.default_rng(0).integers(0, 2, size=(12, 20), dtype=np.uint8)
    ns = gf2_nullspace(mat)
    assert ns.shape[0] == 20 - rank_by_python_ints(mat)
    assert not ((mat.astype(np.int64) @ ns.T.astype(np.int64)) % 2).any()


def test_capacity_guard():
    with pytest.raises(CapacityError):
        betti(FiniteModel((2, 2, 2, 2, 2)))
    with pytest.raises(CapacityError):
        top_quotient_dim((40, 40, 40))
    with pytest.raises(ValueError):
        FiniteModel((1, 3))


def test_fuzz_seed0():
    rep = fuzz_identities(0, 100, (2, 2, 2))
    assert rep.ok and rep.checks >= 300
    assert rep.to_json()["schema"] == "cuboid-cech/fuzz-report@1"
    assert fuzz_identities(0, 100, (2, 2, 2)).to_json() == rep.to_json()


def test_fuzz_flags_overlapping_table():
    grid = Grid(FiniteModel((2, 2)))
    mem = grid.membership(grid.min_pieces())
    mem[0, :] = grid.fin[0]
    mem[0, 0] = mem[0, 1] = True
    rep = fuzz_identities(0, 5, (2, 2), membership=mem)
    assert rep.breaches and not rep.failures


def test_trivialize_on_a_non_cocycle_has_a_witness():
    grid = Grid(FiniteModel((2, 2, 2)))
    rng = np.random.default_rng(4)
    f = random_cocycle(grid, rng, 1)
    assert trivializer_defect(grid, f, grid.min_pieces()) is None
    A = next(iter(f))
    p = int(np.nonzero(grid.mask(A))[0][0])
    f[A] = f[A].copy()
    f[A][p] ^= 1
    w = trivializer_defect(grid, f, grid.min_pieces())
    assert w is not None and "point" in w


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_symbolic_and_matrix_coboundaries_agree(seed):
    # DSL entries that only look at finite values below the top class and are 0 at infinity
    f = random_dsl_cochain(random.Random(seed), 2, 0)
    grid = Grid(FiniteModel((3, 3, 3)))
    lhs = evaluate_on_grid(grid, coboundary(f))
    rhs = grid.d(evaluate_on_grid(grid, f))
    for A in lhs:
        m = grid.mask(A)
        assert np.array_equal(lhs[A][m], rhs[A][m])
