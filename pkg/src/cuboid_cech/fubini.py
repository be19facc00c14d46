"""Fubini partitions: existence, condition checkers, trivializer, modification, embedding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cardinals import KappaTuple
from .cech import Cochain, index_sets, key_str
from .citations import cite
from .fnexpr import (
    ZERO,
    FnExpr,
    Node,
    Piecewise,
    Symbol,
    Xor,
    fn,
    naive_extend,
    xor,
)
from .ordinals import INF
from .partitions import InfiniteFiber, MinRule, Partition, PartitionError, VminRule
from .space import Neighborhood, Point, check_punctured, facet_of, neighborhood_contains, sample_neighborhood


class FubiniError(ValueError):
    pass


@dataclass(frozen=True)
class FubiniVerdict:
    exists: bool
    rule: str
    citation: str

    def to_json(self) -> dict:
        return {"exists": self.exists, "rule": self.rule, "citation": self.citation}


def fubini_exists(kappa: KappaTuple, k: int) -> FubiniVerdict:
    n = kappa.n
    if not -1 <= k <= n:
        raise FubiniError(f"k must lie in [-1, {n}], got {k}")
    if k == -1:
        return FubiniVerdict(False, "never", cite("fubini-never"))
    if k == n:
        return FubiniVerdict(True, "clopen", cite("fubini-clopen"))
    if k == n - 1:
        small = [i for i, m in enumerate(kappa) if m < i]
        if small:
            return FubiniVerdict(True, f"vmin(i={small[0]})", cite("fubini-vmin"))
        return FubiniVerdict(False, "top-nonvanishing", cite("top-nonvanishing"))
    if kappa[n - k] == 0:
        return FubiniVerdict(True, "min", cite("fubini-min"))
    return FubiniVerdict(False, "min-impossible", cite("fubini-min"))


# -- condition (2) -------------------------------------------------------------


def condition2_witness(p: Partition, A: Iterable[int], x: Point, kappa: Optional[KappaTuple] = None) -> Neighborhood:
    """A neighborhood of ``x`` in F_A whose points all land in the pieces indexed by A."""
    A = frozenset(A)
    check_punctured(x)
    if facet_of(x) != A:
        raise FubiniError(f"point must lie on the facet F_{key_str(A)}")
    free = [j for j in range(len(x)) if j not in A]
    if not free:
        return Neighborhood(tuple(x), A)
    if isinstance(p, MinRule):
        countable = [i for i in A if isinstance(x[i], int) and (kappa is None or kappa[i] == 0)]
        if not countable:
            raise FubiniError("min rule needs a coordinate of A on a countable axis")
        i0 = min(countable, key=lambda i: (x[i], i))
        E = frozenset(range(x[i0] + 1))
        return Neighborhood(tuple(x), A, {j: E for j in free})
    if isinstance(p, VminRule):
        n = len(x) - 1
        if len(A) < n:
            raise FubiniError(f"virtual-minimum rule only covers |A| >= n = {n}, got |A| = {len(A)}")
        (j,) = free
        try:
            E = frozenset(p.fiber(x, j))
        except InfiniteFiber as e:
            raise FubiniError(f"no finite witness: {e}") from None
        return Neighborhood(tuple(x), A, {j: E})
    raise FubiniError(f"no witness rule for partition {p.name!r}")


def check_condition2(p: Partition, N: Neighborhood, samples: int = 200, seed: int = 0) -> Optional[Point]:
    """First sampled neighbor outside the A-pieces, or None."""
    for y in sample_neighborhood(N, seed, samples):
        if not neighborhood_contains(N, y):
            return y
        if p.assign(y) not in N.facet:
            return y
    return None


# -- condition (3) -------------------------------------------------------------


def condition3_count(p: Partition, j: int, xr: Sequence, bound: int) -> int:
    """How many naturals v < bound put (xr with v inserted at j) into piece j."""
    xr = tuple(xr)
    count = 0
    for v in range(bound):
        x = xr[:j] + (v,) + xr[j:]
        if p.assign(x) == j:
            count += 1
    return count


def condition3_profile(p: Partition, j: int, xr: Sequence, bounds: Sequence[int]) -> list[int]:
    return [condition3_count(p, j, xr, b) for b in bounds]


def stabilizes(counts: Sequence[int]) -> bool:
    """Non-decreasing with the last two values equal."""
    return all(a <= b for a, b in zip(counts, counts[1:])) and len(counts) >= 2 and counts[-1] == counts[-2]


# -- trivializer and modification ---------------------------------------------


def _union(B, i) -> tuple:
    return tuple(sorted(set(B) | {i}))


def trivialize(f: Cochain, p: Partition) -> Cochain:
    """g_B is f_{B u i} on Y_i for i outside B and 0 on the other pieces."""
    if f.k < 1:
        raise FubiniError("trivialize needs a cochain of degree >= 1")
    n, k = f.n, f.k - 1
    out = {}
    for B in index_sets(n, k + 1):
        branches = tuple(ZERO if i in B else f[_union(B, i)].node for i in range(n + 1))
        out[B] = fn(Piecewise(p, branches), B, n + 1)
    return Cochain(n, k, out)


def modify(f: Cochain, p: Partition) -> Cochain:
    """On Y_i: f_A when i is in A, else the sum of f_{A - j + i} over j in A."""
    n, k = f.n, f.k
    out = {}
    for A in index_sets(n, k + 1):
        branches = []
        for i in range(n + 1):
            if i in A:
                branches.append(f[A].node)
            else:
                branches.append(xor(*(f[tuple(sorted(set(A) - {j} | {i}))].node for j in A)))
        out[A] = fn(Piecewise(p, tuple(branches)), A, n + 1)
    return Cochain(n, k, out)


def embed(f: Cochain, lam: Sequence[int], kappa: Sequence[int], p: Partition) -> Cochain:
    """Modification of the naive extension from X(lam)^- to X(kappa)^-."""
    lam, kappa = tuple(lam), tuple(kappa)
    if len(lam) != f.n + 1:
        raise FubiniError("lambda length does not match the cochain")
    ext = Cochain(f.n, f.k, {A: naive_extend(e, lam, kappa) for A, e in f.entries.items()})
    return modify(ext, p)


# -- symbolic tables -----------------------------------------------------------


def symbolic_cochain(n: int, k: int, letter: str = "f") -> Cochain:
    return Cochain(
        n,
        k,
        {A: fn(Symbol(f"{letter}_{{{key_str(A)}}}"), A, n + 1) for A in index_sets(n, k + 1)},
    )


def _cell(node: Node) -> str:
    if node == ZERO:
        return "0"
    if isinstance(node, Symbol):
        return node.label
    if isinstance(node, Xor) and all(isinstance(c, Symbol) for c in node.items):
        return "+".join(sorted(c.label for c in node.items))
    raise FubiniError(f"cannot render {node!r} as a table cell")


def piecewise_table(g: Cochain, letter: str) -> list[list[str]]:
    """Rows ``[label, cell on Y_0, ..., cell on Y_n]`` in lexicographic key order."""
    rows = []
    for A, e in g.entries.items():
        if not isinstance(e.node, Piecewise):
            raise FubiniError("entries must be piecewise")
        rows.append([f"{letter}_{{{key_str(A)}}}"] + [_cell(b) for b in e.node.branches])
    return rows


def trivializer_table(n: int = 3, k: int = 1) -> list[list[str]]:
    return piecewise_table(trivialize(symbolic_cochain(n, k + 1), MinRule()), "g")


def modification_table(n: int = 3, k: int = 1) -> list[list[str]]:
    return piecewise_table(modify(symbolic_cochain(n, k), MinRule()), "f^Mod")


def format_table(rows: list[list[str]]) -> str:
    n = len(rows[0]) - 1
    header = [""] + [f"Y_{i}" for i in range(n)]
    widths = [max(len(r[c]) for r in rows + [header]) for c in range(n + 1)]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    for r in rows:
        lines.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines)
