"""Concrete nontrivial cocycles and the P_j stability engine."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .cardinals import KappaTuple
from .cech import Cochain, index_sets
from .fnexpr import (
    ONE,
    ZERO,
    And,
    BelowMin,
    Const,
    CoordEven,
    CoordIn,
    CoordLess,
    Delta,
    FnExpr,
    Node,
    Not,
    SigmaDelta,
    Xor,
    axis_breakpoints,
    conj,
    equiv_decide,
    fn,
    iter_nodes,
    neg,
    pin,
    pin_node,
    xor,
)
from .ordinals import INF, OMEGA, AxisValue, add_finite, axis_key, from_terms, ordinal_code
from .space import Point


class WitnessError(ValueError):
    pass


def p_axes(n: int, k: int) -> tuple:
    return tuple(range(n - k + 1))


def q_axes(n: int, k: int) -> tuple:
    return tuple(range(n - k + 1, n + 1))


def kterminal(A, n: int, k: int) -> bool:
    return set(range(n - k + 1, n + 1)) <= set(A)


def delta_b(B, n: int) -> FnExpr:
    """Delta_B on n+1 coordinates; continuous on all of X(kappa)^-."""
    return fn(Delta(frozenset(B)), (), n + 1)


def sigma(beta: AxisValue, low_axes: int, arity: Optional[int] = None) -> FnExpr:
    """Delta_{code(beta)} on the first ``low_axes`` coordinates."""
    axes = tuple(range(low_axes))
    return fn(Delta(frozenset([ordinal_code(beta)]), axes), (), arity or low_axes)


def main1_cocycle(kappa: KappaTuple | int, k: int) -> Cochain:
    """sigma(x_{n-k+1}) on the P-axes for k-terminal A, and 0 elsewhere."""
    n = (len(kappa) if not isinstance(kappa, int) else kappa) - 1
    if not 0 < k < n:
        raise WitnessError(f"need 0 < k < n, got k={k}, n={n}")
    node = SigmaDelta(n - k + 1, p_axes(n, k))
    return Cochain(
        n,
        k,
        {A: fn(node if kterminal(A, n, k) else ZERO, A, n + 1) for A in index_sets(n, k + 1)},
    )


# -- slices over the Q-axes ------------------------------------------------------


def _slice(f: Cochain, A, y: Sequence) -> FnExpr:
    q = q_axes(f.n, f.k)
    if len(y) != len(q):
        raise WitnessError(f"Q-point needs {len(q)} coordinates")
    return pin(f[A], dict(zip(q, y)))


@dataclass(frozen=True)
class SliceVerdict:
    distinct: bool
    witness: Optional[Point] = None


def slice_distinct(f: Cochain, A, y1: Sequence, y2: Sequence) -> SliceVerdict:
    """Look for a P-point where the two Q-slices of f_A differ."""
    A = tuple(sorted(A))
    if not kterminal(A, f.n, f.k):
        raise WitnessError("A must be k-terminal")
    if tuple(y1) == tuple(y2):
        return SliceVerdict(False)
    s1, s2 = _slice(f, A, y1), _slice(f, A, y2)
    P = p_axes(f.n, f.k)
    # diagonals at the codes of the first Q-coordinates, then a generic grid scan
    for c in {ordinal_code(v) for v in (y1[0], y2[0]) if v is not INF}:
        x = tuple(c if i in P else INF for i in range(f.n + 1))
        if s1.node.ev(x) != s2.node.ev(x):
            return SliceVerdict(True, tuple(x[i] for i in P))
    v = equiv_decide(s1, s2)
    if v.kind == "not_equal":
        return SliceVerdict(True, tuple(v.witness[i] for i in P))
    return SliceVerdict(False)


@dataclass(frozen=True)
class ScanResult:
    stabilized: bool
    index: Optional[int] = None


def cofinal_constancy_scan(f: Cochain, A, chain: Sequence[Sequence], bound: int = 4) -> ScanResult:
    """First chain index from which every slice of f_A equals that slice."""
    A = tuple(sorted(A))
    if not kterminal(A, f.n, f.k):
        raise WitnessError("A must be k-terminal")
    if len(chain) < 2:
        raise WitnessError("chain needs at least two points")
    slices = [_slice(f, A, y) for y in chain]
    start = len(slices) - 1
    for i in range(len(slices) - 2, -1, -1):
        if equiv_decide(slices[i], slices[i + 1], bound).kind == "not_equal":
            break
        start = i
    if start >= len(slices) - 1:
        return ScanResult(False)
    return ScanResult(True, start)


# -- the continuous family of coboundaries --------------------------------------


def main3_axes(z: int, k: int) -> tuple:
    return tuple(range(z, z + k + 1))


def main3_phi(z: int, k: int) -> FnExpr:
    """1 iff x_z lies below min(x_0..x_{z-1}, omega) and x_{z+1}..x_{z+k} are even."""
    if z < 1 or k < 1:
        raise WitnessError("z and k must be positive")
    node = conj(BelowMin(z, tuple(range(z)), OMEGA), *(CoordEven(z + i) for i in range(1, k + 1)))
    return fn(node, main3_axes(z, k), z + k + 1)


def main3_decomposition(z: int, k: int):
    """When some parameter is finite, phi is mod-finite constant along x_z: g_{B-z} = phi."""
    phi = main3_phi(z, k)
    B = main3_axes(z, k)

    def provider(s: int) -> FnExpr:
        dom = tuple(b for b in B if b != s)
        return fn(phi.node if s == z else ZERO, dom, phi.arity)

    return provider


# -- P_j -------------------------------------------------------------------------


class FragmentError(WitnessError):
    pass


_FRAGMENT = (Const, CoordLess, CoordIn, CoordEven, Xor, And, Not)


def _check_fragment(node: Node, axes: Sequence[int]) -> None:
    for m in iter_nodes(node):
        if not isinstance(m, _FRAGMENT):
            raise FragmentError(f"{type(m).__name__} is outside the P_j fragment")
        if isinstance(m, (CoordLess, CoordIn, CoordEven)) and m.i not in axes:
            raise FragmentError(f"atom on axis {m.i} outside the axes {list(axes)}")


def _finite_gap(a: AxisValue, b: AxisValue) -> bool:
    """b = a + m for some natural m."""
    strip = lambda v: tuple(t for t in (() if isinstance(v, int) else v.terms) if t[0] > 0)
    return strip(a) == strip(b)


def _infinite_class_reps(node: Node, axis: int, arity: int) -> list:
    """Representatives, both parities, of every infinite class of the axis."""
    bps = sorted({0, *axis_breakpoints(node, arity)[axis]} - {INF}, key=axis_key)
    reps = []
    for t, b in enumerate(bps):
        nxt = bps[t + 1] if t + 1 < len(bps) else None
        if nxt is None or not _finite_gap(b, nxt):
            reps += [add_finite(b, 1), add_finite(b, 2)]
    return reps


def _tail_reps(node: Node, axis: int, arity: int) -> list:
    bps = sorted({0, *axis_breakpoints(node, arity)[axis]} - {INF}, key=axis_key)
    top = bps[-1]
    return [add_finite(top, 1), add_finite(top, 2)]


def _pj(node: Node, axes: Sequence[int], arity: int) -> bool:
    last = axes[-1]
    if len(axes) == 1:
        x = [0] * arity
        vals = set()
        for r in _infinite_class_reps(node, last, arity):
            x[last] = r
            vals.add(node.ev(tuple(x)))
        return len(vals) <= 1
    r0, r1 = _tail_reps(node, last, arity)
    diff = xor(pin_node(node, {last: r0}), pin_node(node, {last: r1}))
    return _pj(diff, axes[:-1], arity)


def pj_decide(f: FnExpr, j: int, z: Optional[int] = None) -> bool:
    """Exact P_j test for a fragment function of the axes z..z+j (z defaults to min domain).

    The axes are assumed uncountable, so the tail above every breakpoint is an
    infinite class of each parity.
    """
    if z is None:
        z = min(f.domain) if f.domain else 0
    axes = tuple(range(z, z + j + 1))
    if axes[-1] >= f.arity:
        raise FragmentError("axes exceed the function's arity")
    _check_fragment(f.node, axes)
    return _pj(f.node, axes, f.arity)


# -- random fragment material ---------------------------------------------------

_THRESHOLDS = [1, 2, 3, 5, OMEGA, add_finite(OMEGA, 1), from_terms([(1, 2)]), from_terms([(2, 1)])]


def random_fragment_node(rng: random.Random, axes: Sequence[int], depth: int = 2) -> Node:
    if not axes:
        return Const(rng.randrange(2))
    if depth == 0 or rng.random() < 0.3:
        a = rng.choice(list(axes))
        kind = rng.randrange(4)
        if kind == 0:
            return CoordLess(a, rng.choice(_THRESHOLDS))
        if kind == 1:
            return CoordEven(a)
        if kind == 2:
            return CoordIn(a, frozenset(rng.sample([0, 1, 2, 4, 7, OMEGA], rng.randrange(1, 3))))
        return Const(rng.randrange(2))
    op = rng.randrange(3)
    kids = [random_fragment_node(rng, axes, depth - 1) for _ in range(rng.randrange(2, 4))]
    if op == 0:
        return xor(*kids)
    if op == 1:
        return conj(*kids)
    return neg(kids[0])


def _finite_support_atom(rng: random.Random, axis: int) -> Node:
    if rng.random() < 0.5:
        return CoordLess(axis, rng.randrange(1, 6))
    return CoordIn(axis, frozenset(rng.sample(range(8), rng.randrange(1, 4))))


def random_fragment_coboundary(rng: random.Random, z: int, k: int) -> FnExpr:
    """A top function on the axes z..z+k written as a sum of g_i, each mod-finite
    constant in axis i."""
    axes = main3_axes(z, k)
    terms = []
    for i in axes:
        others = [a for a in axes if a != i]
        g = xor(
            random_fragment_node(rng, others),
            conj(_finite_support_atom(rng, i), random_fragment_node(rng, others)),
        )
        terms.append(g)
    return fn(xor(*terms), axes, z + k + 1)
