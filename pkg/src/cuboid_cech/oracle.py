"""Finite-model ground truth.

Axis i of the model takes the values 0..m_i-1 and infinity; a function on
D_A counts as continuous when it never separates m_j-1 from infinity off A,
so every C_A is the space of functions on the class grid prod{0..m_i-1}.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .cech import Cochain, index_sets
from .ordinals import INF

CAPACITY = 1 << 15


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteModel:
    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(m) for m in self.sizes)
        if not sizes or any(m < 2 for m in sizes):
            raise ValueError("finite-model sizes must all be >= 2")
        object.__setattr__(self, "sizes", sizes)

    @property
    def n(self) -> int:
        return len(self.sizes) - 1

    @property
    def class_count(self) -> int:
        return int(np.prod(self.sizes))

    def points(self) -> np.ndarray:
        """Every grid point except all-infinity; infinity on axis i is encoded as m_i."""
        axes = [np.arange(m + 1) for m in self.sizes]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(self.sizes))
        inf = (pts == np.array(self.sizes)).all(axis=1)
        return pts[~inf]

    def classes(self, pts: np.ndarray) -> np.ndarray:
        sz = np.array(self.sizes)
        return np.ravel_multi_index(tuple(np.minimum(pts, sz - 1).T), self.sizes)

    def finite(self, pts: np.ndarray) -> np.ndarray:
        return pts < np.array(self.sizes)


def parse_sizes(text: str) -> FiniteModel:
    return FiniteModel(tuple(int(t) for t in text.replace(" ", "").split(",") if t))


def decode_point(model: FiniteModel, row) -> tuple:
    return tuple(INF if int(v) >= m else int(v) for v, m in zip(row, model.sizes))


def _guard(n_items: int, what: str) -> None:
    if n_items > CAPACITY:
        raise CapacityError(f"{what} has {n_items} entries; the oracle caps dimensions at {CAPACITY}")


def model_space_dim(model: FiniteModel, A) -> int:
    pts = model.points()
    mask = model.finite(pts)[:, sorted(A)].all(axis=1) if A else np.ones(len(pts), bool)
    return int(np.unique(model.classes(pts[mask])).size)


# -- the class complex ---------------------------------------------------------


def _basis(model: FiniteModel, k: int) -> dict:
    """(A, class) -> column index for degree k."""
    pts = model.points()
    fin = model.finite(pts)
    out = {}
    for A in index_sets(model.n, k + 1):
        mask = fin[:, list(A)].all(axis=1)
        for c in np.unique(model.classes(pts[mask])):
            out[(A, int(c))] = len(out)
    return out


def coboundary_matrix(model: FiniteModel, k: int) -> tuple[np.ndarray, int]:
    """Dense 0/1 matrix of d: C^k -> C^(k+1), rows indexed by degree k+1 basis."""
    src, dst = _basis(model, k), _basis(model, k + 1)
    _guard(len(src) + len(dst), f"degree-{k} coboundary")
    mat = np.zeros((len(dst), len(src)), dtype=np.uint8)
    for (A2, c), r in dst.items():
        # the class tuple itself is a point of D_A2; restriction keeps its class
        for i in A2:
            A = tuple(a for a in A2 if a != i)
            mat[r, src[(A, c)]] ^= 1
    return mat, len(src)


def cochain_dims(model: FiniteModel) -> list[int]:
    return [len(_basis(model, k)) for k in range(model.n + 1)]


def gf2_rank_dense(mat: np.ndarray) -> int:
    if mat.size == 0:
        return 0
    return _kernels.gf2_rank(_kernels.pack_rows(mat), mat.shape[1])


def betti(model: FiniteModel) -> list[int]:
    if model.n > 3:
        raise CapacityError("the oracle handles n <= 3")
    _guard(int(np.prod([m + 1 for m in model.sizes])) * (1 << model.n), "model grid")
    dims = cochain_dims(model)
    ranks = []
    for k in range(model.n):
        mat, _ = coboundary_matrix(model, k)
        ranks.append(gf2_rank_dense(mat))
    ranks.append(0)
    return [dims[k] - ranks[k] - (ranks[k - 1] if k else 0) for k in range(model.n + 1)]


def top_quotient_dim(sizes: Sequence[int]) -> int:
    """dim of functions on prod(sizes) modulo those independent of one coordinate."""
    sizes = tuple(int(m) for m in sizes)
    total = int(np.prod(sizes))
    _guard(total, "top grid")
    idx = np.arange(total).reshape(sizes)
    gens = []
    for i in range(len(sizes)):
        # one generator per line parallel to axis i
        lines = np.moveaxis(idx, i, -1).reshape(-1, sizes[i])
        g = np.zeros((lines.shape[0], total), dtype=np.uint8)
        g[np.arange(lines.shape[0])[:, None], lines] = 1
        gens.append(g)
    return total - gf2_rank_dense(np.concatenate(gens))


def gf2_nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {v : mat v = 0} over GF(2)."""
    m = mat.copy().astype(np.uint8) % 2
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        hit = np.nonzero(m[r:, c])[0] if r < rows else []
        if len(hit) == 0:
            continue
        p = r + hit[0]
        m[[r, p]] = m[[p, r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for row, pc in enumerate(pivots):
            basis[t, pc] = m[row, f]
    return basis


# -- pointwise arrays ------------------------------------------------------------


class Grid:
    """Precomputed points, finite masks and class indices of a model."""

    def __init__(self, model: FiniteModel):
        self.model = model
        self.pts = model.points()
        self.fin = model.finite(self.pts)
        self.cls = model.classes(self.pts)
        self._masks = {}

    def mask(self, A) -> np.ndarray:
        A = tuple(A)
        if A not in self._masks:
            self._masks[A] = self.fin[:, list(A)].all(axis=1) if A else np.ones(len(self.pts), bool)
        return self._masks[A]

    def lift(self, tables: dict) -> dict:
        """Class tables -> pointwise arrays (zero off each face)."""
        return {A: (t[self.cls] & self.mask(A)).astype(np.uint8) for A, t in tables.items()}

    def random_cochain(self, rng: np.random.Generator, k: int) -> dict:
        n = self.model.n
        size = self.model.class_count
        return self.lift({A: rng.integers(0, 2, size, dtype=np.uint8) for A in index_sets(n, k + 1)})

    def d(self, f: dict) -> dict:
        k = len(next(iter(f))) - 1
        out = {}
        for A2 in index_sets(self.model.n, k + 2):
            acc = np.zeros(len(self.pts), np.uint8)
            for i in A2:
                acc ^= f[tuple(a for a in A2 if a != i)]
            out[A2] = acc & self.mask(A2)
        return out

    def trivialize(self, f: dict, piece: np.ndarray) -> dict:
        k = len(next(iter(f))) - 2
        out = {}
        for B in index_sets(self.model.n, k + 1):
            g = np.zeros(len(self.pts), np.uint8)
            for i in range(self.model.n + 1):
                if i in B:
                    continue
                sel = piece == i
                g[sel] = f[tuple(sorted(B + (i,)))][sel]
            out[B] = g & self.mask(B)
        return out

    def modify(self, f: dict, piece: np.ndarray) -> dict:
        out = {}
        for A in f:
            g = np.zeros(len(self.pts), np.uint8)
            for i in range(self.model.n + 1):
                sel = piece == i
                if i in A:
                    g[sel] = f[A][sel]
                    continue
                acc = np.zeros(int(sel.sum()), np.uint8)
                for j in A:
                    acc ^= f[tuple(sorted(set(A) - {j} | {i}))][sel]
                g[sel] = acc
            out[A] = g & self.mask(A)
        return out

    def first_difference(self, f: dict, g: dict) -> Optional[tuple]:
        for A in f:
            bad = np.nonzero((f[A] ^ g[A]) & self.mask(A))[0]
            if bad.size:
                return A, decode_point(self.model, self.pts[bad[0]])
        return None

    def random_pieces(self, rng: np.random.Generator) -> np.ndarray:
        """Each point goes to a uniformly chosen finite coordinate."""
        keys = rng.random(self.fin.shape)
        keys[~self.fin] = -1.0
        return np.argmax(keys, axis=1)

    def min_pieces(self) -> np.ndarray:
        return _kernels.min_assign(self.pts, self.model.sizes)

    def membership(self, piece: np.ndarray) -> np.ndarray:
        mem = np.zeros(self.fin.shape, dtype=bool)
        mem[np.arange(len(piece)), piece] = True
        return mem


def partition_breach(grid: Grid, membership: np.ndarray) -> Optional[str]:
    """Why a membership table is not a usable partition, or None."""
    counts = membership.sum(axis=1)
    if (counts != 1).any():
        p = int(np.nonzero(counts != 1)[0][0])
        return f"point {_fmt(grid, p)} lies in {int(counts[p])} pieces"
    bad = membership & ~grid.fin
    if bad.any():
        p = int(np.nonzero(bad.any(axis=1))[0][0])
        return f"point {_fmt(grid, p)} is assigned to an infinite coordinate"
    return None


def _fmt(grid: Grid, p: int) -> str:
    return "(" + ", ".join(str(v) for v in decode_point(grid.model, grid.pts[p])) + ")"


# -- fuzzing --------------------------------------------------------------------


@dataclass
class FuzzReport:
    seed: int
    trials: int
    sizes: tuple
    checks: int = 0
    failures: list = field(default_factory=list)
    breaches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "schema": "cuboid-cech/fuzz-report@1",
            "seed": self.seed,
            "trials": self.trials,
            "sizes": list(self.sizes),
            "checks": self.checks,
            "failures": self.failures,
            "precondition_breaches": self.breaches,
        }


def _witness(grid: Grid, diff) -> dict:
    A, pt = diff
    return {"key": "".join(map(str, A)), "point": ["inf" if v is INF else str(v) for v in pt]}


def random_cocycle(grid: Grid, rng: np.random.Generator, k: int) -> dict:
    """d of a random (k-1)-cochain plus a random kernel vector of the class complex."""
    model = grid.model
    n = model.n
    if k == 0:
        base = {A: np.zeros(len(grid.pts), np.uint8) for A in index_sets(n, 1)}
    else:
        base = grid.d(grid.random_cochain(rng, k - 1))
    basis = _basis(model, k)
    if k < n:
        mat, _ = coboundary_matrix(model, k)
        null = gf2_nullspace(mat)
    else:
        null = np.eye(len(basis), dtype=np.uint8)
    if len(null):
        coeffs = rng.integers(0, 2, len(null), dtype=np.uint8)
        vec = (coeffs @ null) % 2
        tables = {A: np.zeros(model.class_count, np.uint8) for A in index_sets(n, k + 1)}
        for (A, c), col in basis.items():
            tables[A][c] = vec[col]
        extra = grid.lift(tables)
        base = {A: base[A] ^ extra[A] for A in base}
    return base


def fuzz_identities(
    seed: int = 0,
    trials: int = 100,
    sizes: Sequence[int] = (2, 2, 2),
    partition: str = "random",
    membership: Optional[np.ndarray] = None,
) -> FuzzReport:
    """Pointwise d.d = 0, d(trivialize f) = f for cocycles, and d(modify f) = 0."""
    model = FiniteModel(tuple(sizes))
    grid = Grid(model)
    rng = np.random.default_rng(seed)
    report = FuzzReport(seed, trials, model.sizes)
    n = model.n
    if membership is not None:
        why = partition_breach(grid, membership)
        if why:
            report.breaches.append({"partition": "supplied", "reason": why})
            return report
        fixed_piece = np.argmax(membership, axis=1)
    else:
        fixed_piece = None
    for t in range(trials):
        if fixed_piece is not None:
            piece = fixed_piece
        elif partition == "min":
            piece = grid.min_pieces()
        else:
            piece = grid.random_pieces(rng)
        why = partition_breach(grid, grid.membership(piece))
        if why:
            report.breaches.append({"trial": t, "reason": why})
            continue
        if n >= 2:
            k = int(rng.integers(0, n - 1))
            f = grid.random_cochain(rng, k)
            dd = grid.d(grid.d(f))
            diff = grid.first_difference(dd, {A: np.zeros_like(v) for A, v in dd.items()})
            report.checks += 1
            if diff:
                report.failures.append({"trial": t, "identity": "d(d f) = 0", "degree": k, **_witness(grid, diff)})
        k = int(rng.integers(1, n + 1))
        f = random_cocycle(grid, rng, k)
        g = grid.trivialize(f, piece)
        diff = grid.first_difference(grid.d(g), f)
        report.checks += 1
        if diff:
            report.failures.append({"trial": t, "identity": "d(trivialize f) = f", "degree": k, **_witness(grid, diff)})
        k = int(rng.integers(0, n))
        f = grid.random_cochain(rng, k)
        dm = grid.d(grid.modify(f, piece))
        diff = grid.first_difference(dm, {A: np.zeros_like(v) for A, v in dm.items()})
        report.checks += 1
        if diff:
            report.failures.append({"trial": t, "identity": "d(modify f) = 0", "degree": k, **_witness(grid, diff)})
    return report


def trivializer_defect(grid: Grid, f: dict, piece: np.ndarray) -> Optional[dict]:
    """Witness where d(trivialize f) differs from f (None when f is reproduced)."""
    diff = grid.first_difference(grid.d(grid.trivialize(f, piece)), f)
    return _witness(grid, diff) if diff else None


# -- DSL cochains on the grid -----------------------------------------------------


def evaluate_on_grid(grid: Grid, f: Cochain) -> dict:
    """Pointwise values of a DSL cochain at the model's grid points."""
    out = {}
    decoded = [decode_point(grid.model, row) for row in grid.pts]
    for A, e in f.entries.items():
        mask = grid.mask(A)
        vals = np.zeros(len(decoded), np.uint8)
        for p in np.nonzero(mask)[0]:
            vals[p] = e.node.ev(decoded[p])
        out[A] = vals
    return out
