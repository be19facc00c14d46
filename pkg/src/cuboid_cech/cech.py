"""Cochains over [n+1]^{k+1}, the coboundary, cocycle checks and face restriction."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

from .fnexpr import (
    ZERO,
    ExprError,
    FnExpr,
    Node,
    Verdict,
    axis_candidates,
    equiv_decide,
    fn,
    is_correlating,
    parse_sexpr,
    pin,
    pin_node,
    restrict_to,
    to_sexpr,
    xor,
)
from .ordinals import INF
from .space import Point, format_point, index_set_str, point_to_json

SCHEMA = "cuboid-cech/cochain@1"


class CochainError(ValueError):
    pass


def index_sets(n: int, size: int) -> list[tuple]:
    """[n+1]^{size} in lexicographic order."""
    return list(itertools.combinations(range(n + 1), size))


def key_str(A) -> str:
    return index_set_str(A)


def parse_key(s: str) -> tuple:
    return tuple(sorted(int(c) for c in s))


@dataclass(frozen=True)
class Cochain:
    n: int
    k: int
    entries: Mapping[tuple, FnExpr]

    def __post_init__(self):
        if not -1 <= self.k <= self.n:
            raise CochainError(f"degree {self.k} out of range for n={self.n}")
        keys = index_sets(self.n, self.k + 1)
        ent = {tuple(sorted(A)): f for A, f in self.entries.items()}
        if set(ent) != set(keys):
            raise CochainError("cochain keys must be exactly [n+1]^{k+1}")
        for A, f in ent.items():
            if f.domain != frozenset(A):
                raise CochainError(f"entry {key_str(A)} has domain {sorted(f.domain)}")
            if f.arity != self.n + 1:
                raise CochainError(f"entry {key_str(A)} has arity {f.arity}, expected {self.n + 1}")
        object.__setattr__(self, "entries", {A: ent[A] for A in keys})

    def __getitem__(self, A) -> FnExpr:
        if isinstance(A, str):
            A = parse_key(A)
        return self.entries[tuple(sorted(A))]

    def keys(self):
        return list(self.entries)


def cochain(n: int, k: int, nodes: Mapping) -> Cochain:
    """Build from ``{A: Node}`` (keys as tuples or digit strings); missing keys are 0."""
    by_key = {}
    for A, node in nodes.items():
        A = parse_key(A) if isinstance(A, str) else tuple(sorted(A))
        by_key[A] = node
    return Cochain(
        n, k, {A: fn(by_key.get(A, ZERO), A, n + 1) for A in index_sets(n, k + 1)}
    )


def zero_cochain(n: int, k: int) -> Cochain:
    return cochain(n, k, {})


def coboundary(f: Cochain) -> Cochain:
    if f.k >= f.n:
        raise CochainError("the top-degree cochain has no coboundary")
    out = {}
    for A2 in index_sets(f.n, f.k + 2):
        node = xor(*(f[tuple(a for a in A2 if a != i)].node for i in A2))
        out[A2] = fn(node, A2, f.n + 1)
    return Cochain(f.n, f.k + 1, out)


def add_cochains(f: Cochain, g: Cochain) -> Cochain:
    if (f.n, f.k) != (g.n, g.k):
        raise CochainError("cochains of different shape")
    return Cochain(f.n, f.k, {A: fn(xor(f[A].node, g[A].node), A, f.n + 1) for A in f.keys()})


@dataclass(frozen=True)
class CocycleVerdict:
    holds: bool
    tag: str  # "exact" | "verified_up_to_bound"
    key: Optional[tuple] = None
    witness: Optional[Point] = None
    bound: Optional[int] = None

    def to_json(self) -> dict:
        out = {"cocycle": self.holds, "tag": self.tag}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.key is not None:
            out["key"] = key_str(self.key)
            out["witness"] = point_to_json(self.witness)
        return out


def is_cocycle(f: Cochain, mode: str = "exact", bound: int = 3) -> CocycleVerdict:
    """Check every (df)_{A'} against 0.

    ``exact`` decides each entry when it lies in the product fragment and
    otherwise falls back to the bounded grid, tagging the verdict.  ``bounded``
    always scans the grid (naturals below ``bound``, atom breakpoints, infinity).
    """
    if mode not in ("exact", "bounded"):
        raise CochainError(f"unknown mode {mode!r}")
    if f.k == f.n:
        return CocycleVerdict(True, "exact")
    df = coboundary(f)
    exact = True
    for A2, g in df.entries.items():
        zero = fn(ZERO, A2, f.n + 1)
        if mode == "exact":
            v = equiv_decide(g, zero, bound)
        else:
            v = _bounded(g, zero, bound)
        if v.kind == "not_equal":
            return CocycleVerdict(False, "exact" if v.bound is None else "verified_up_to_bound", A2, v.witness, v.bound)
        if v.kind == "verified_up_to_bound":
            exact = False
    return CocycleVerdict(True, "exact" if exact else "verified_up_to_bound", bound=None if exact else bound)


def _bounded(f: FnExpr, g: FnExpr, bound: int) -> Verdict:
    cands = axis_candidates([f.node, g.node], f.arity, extra=range(bound))
    domain = f.domain | g.domain
    per_axis = [[v for v in cands[i] if not (i in domain and v is INF)] for i in range(f.arity)]
    for x in itertools.product(*per_axis):
        if all(v is INF for v in x):
            continue
        if f.node.ev(x) != g.node.ev(x):
            return Verdict("not_equal", x, bound)
    return Verdict("verified_up_to_bound", None, bound)


def face_restrict(f: Cochain, B) -> FnExpr:
    """f_B evaluated with every coordinate outside B pinned to infinity."""
    B = tuple(sorted(B))
    if len(B) != f.k + 1:
        raise CochainError(f"face restriction of a degree-{f.k} cochain needs |B| = {f.k + 1}")
    comp = {j: INF for j in range(f.n + 1) if j not in B}
    return pin(f[B], comp)


def phi_map(f: Cochain, B, x: Mapping[int, object]) -> FnExpr:
    """The slice y -> f_B(x, y) at a point ``x`` of the complement axes."""
    B = tuple(sorted(B))
    if len(B) != f.k + 1:
        raise CochainError(f"need |B| = {f.k + 1}")
    comp = [j for j in range(f.n + 1) if j not in B]
    if set(x) != set(comp):
        raise CochainError(f"x must give exactly the coordinates {comp}")
    return pin(f[B], dict(x))


def cocycle_decomposition(f: Cochain, B, j: int) -> dict:
    """For finite x_j (j outside B), the cocycle identity writes f_B as a sum over
    s in B of f_{B - s + j}; returns ``{s: that summand}``."""
    B = tuple(sorted(B))
    if j in B:
        raise CochainError("j must lie outside B")
    return {s: f[tuple(sorted(set(B) - {s} | {j}))] for s in B}


def cocycle_from_phi(
    phi: FnExpr,
    B,
    decomp: Callable[[int], FnExpr],
    check_bound: int = 3,
) -> Cochain:
    """Assemble a cocycle whose face restriction at B is phi at the all-infinity point.

    ``phi`` is one expression over all axes (the complement axes are the family
    parameter) with domain B.  ``decomp(s)`` returns g_{B-s}: an expression over
    all axes with domain B - {s}; the g's must sum to phi whenever some
    complement coordinate is finite.  The contract is checked on a grid.
    """
    B = tuple(sorted(B))
    n = phi.arity - 1
    k = len(B) - 1
    if phi.domain != frozenset(B):
        raise CochainError("phi must have domain B")
    comp = [j for j in range(n + 1) if j not in B]
    gs = {}
    for s in B:
        g = decomp(s)
        if g.arity != phi.arity or not g.domain <= frozenset(B) - {s}:
            raise CochainError(f"decomposition entry for s={s} has the wrong shape")
        gs[s] = g
    _check_decomposition(phi, gs, comp, check_bound)
    entries = {}
    for A in index_sets(n, k + 1):
        SA = set(A)
        if A == B:
            entries[A] = phi
            continue
        out = set(B) - SA
        extra = SA - set(B)
        if len(out) == 1 and len(extra) == 1:
            (s,) = out
            entries[A] = restrict_to(gs[s], A)
        else:
            entries[A] = fn(ZERO, A, n + 1)
    return Cochain(n, k, entries)


def _check_decomposition(phi: FnExpr, gs: dict, comp: list, bound: int) -> None:
    nodes = [phi.node] + [g.node for g in gs.values()]
    cands = axis_candidates(nodes, phi.arity, extra=range(bound))
    B = phi.domain
    per_axis = [[v for v in cands[i] if not (i in B and v is INF)] for i in range(phi.arity)]
    for x in itertools.product(*per_axis):
        if all(x[j] is INF for j in comp):
            continue
        total = 0
        for g in gs.values():
            total ^= g.node.ev(x)
        if total != phi.node.ev(x):
            raise CochainError(
                f"decomposition does not sum to phi at {format_point(x)}: provider contract breach"
            )


# -- JSON --------------------------------------------------------------------


def cochain_to_json(f: Cochain) -> dict:
    return {
        "schema": SCHEMA,
        "n": f.n,
        "k": f.k,
        "entries": {key_str(A): to_sexpr(e.node) for A, e in f.entries.items()},
    }


def cochain_from_json(data) -> Cochain:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n, k, entries = int(data["n"]), int(data["k"]), data["entries"]
    except (KeyError, TypeError, ValueError) as e:
        raise CochainError(f"malformed cochain JSON: {e}") from None
    nodes = {}
    for key, text in entries.items():
        try:
            nodes[parse_key(key)] = parse_sexpr(text)
        except ExprError as e:
            raise CochainError(f"entry {key}: {e}") from None
    expected = set(index_sets(n, k + 1))
    if set(nodes) != expected:
        raise CochainError("cochain JSON keys must be exactly [n+1]^{k+1}")
    return cochain(n, k, nodes)


def dumps(f: Cochain) -> str:
    return json.dumps(cochain_to_json(f), indent=2, sort_keys=False)
