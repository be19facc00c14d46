"""Closed-form continuous Z/2-valued functions on faces D_A.

An :class:`FnExpr` pairs an expression tree with the index set ``A`` of its
face and the tuple length.  Atoms evaluate at infinity by their continuous
extension: ``less``/``in``/``even`` are 0 there, ``isinf`` is 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .ordinals import (
    INF,
    OMEGA,
    AxisValue,
    add_finite,
    axis_key,
    format_ordinal,
    is_even,
    ordinal,
    ordinal_code,
    ordinal_decode,
    parse_axis_value,
)
from .partitions import Partition, PartitionError, partition_by_name
from .space import Neighborhood, Point, check_punctured, facet_of, in_DA


class ExprError(ValueError):
    pass


class DiscontinuityError(ExprError):
    """No finite (or threshold-form) witness exists for this expression at this point."""


def _lt(a: AxisValue, b: AxisValue) -> bool:
    return axis_key(a) < axis_key(b)


def _min(vals):
    return min(vals, key=axis_key)


# -- nodes -------------------------------------------------------------------


class Node:
    correlating = False

    def ev(self, x: Point) -> int:
        raise NotImplementedError

    def children(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Const(Node):
    bit: int

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ExprError("constants are bits")

    def ev(self, x):
        return self.bit


ZERO, ONE = Const(0), Const(1)


@dataclass(frozen=True)
class Symbol(Node):
    """An opaque named function; used to print piecewise rules as tables."""

    label: str

    def ev(self, x):
        raise ExprError(f"symbol {self.label} has no values")


@dataclass(frozen=True)
class CoordLess(Node):
    i: int
    c: AxisValue

    def ev(self, x):
        v = x[self.i]
        return int(v is not INF and _lt(v, self.c))


@dataclass(frozen=True)
class CoordIn(Node):
    i: int
    S: frozenset

    def ev(self, x):
        return int(x[self.i] in self.S)


@dataclass(frozen=True)
class CoordIsInf(Node):
    i: int

    def ev(self, x):
        return int(x[self.i] is INF)


@dataclass(frozen=True)
class CoordEven(Node):
    i: int

    def ev(self, x):
        return int(is_even(x[self.i]))


@dataclass(frozen=True)
class Delta(Node):
    """1 iff the coordinates on ``axes`` (all of them when None) are finite, equal and in B."""

    B: frozenset
    axes: Optional[tuple] = None
    correlating = True

    def ev(self, x):
        axes = self.axes if self.axes is not None else range(len(x))
        vals = [x[a] for a in axes]
        v = vals[0]
        return int(v is not INF and all(w == v for w in vals) and v in self.B)


@dataclass(frozen=True)
class SigmaDelta(Node):
    """Delta({code(x_src)}) on ``axes``: the sigma-coded diagonal indicator."""

    src: int
    axes: tuple
    correlating = True

    def ev(self, x):
        s = x[self.src]
        if s is INF:
            return 0
        return Delta(frozenset([ordinal_code(s)]), self.axes).ev(x)


@dataclass(frozen=True)
class BelowMin(Node):
    """1 iff x_i is finite and below min(limit, min over axes of min(x_a, cap)); inf counts as cap."""

    i: int
    axes: tuple
    cap: AxisValue = OMEGA
    limit: Optional[AxisValue] = None
    correlating = True

    def threshold(self, x) -> AxisValue:
        vals = [self.cap if x[a] is INF else _min([x[a], self.cap]) for a in self.axes]
        if self.limit is not None:
            vals.append(self.limit)
        return _min(vals) if vals else self.cap

    def ev(self, x):
        v = x[self.i]
        return int(v is not INF and _lt(v, self.threshold(x)))


@dataclass(frozen=True)
class Xor(Node):
    items: tuple

    def ev(self, x):
        acc = 0
        for c in self.items:
            acc ^= c.ev(x)
        return acc

    def children(self):
        return self.items


@dataclass(frozen=True)
class And(Node):
    items: tuple

    def ev(self, x):
        return int(all(c.ev(x) for c in self.items))

    def children(self):
        return self.items


@dataclass(frozen=True)
class Not(Node):
    item: Node

    def ev(self, x):
        return 1 - self.item.ev(x)

    def children(self):
        return (self.item,)


@dataclass(frozen=True)
class PinCoord(Node):
    i: int
    v: AxisValue
    item: Node

    def ev(self, x):
        y = list(x)
        y[self.i] = self.v
        return self.item.ev(tuple(y))

    def children(self):
        return (self.item,)


@dataclass(frozen=True)
class PinLargeToInf(Node):
    """Evaluate ``item`` after sending every x_j >= thresholds[j] to infinity (None: never)."""

    thresholds: tuple
    item: Node

    def lift(self, x):
        return tuple(
            INF if (t is not None and v is not INF and not _lt(v, t)) else v
            for v, t in zip(x, self.thresholds)
        )

    def ev(self, x):
        return self.item.ev(self.lift(x))

    def children(self):
        return (self.item,)


@dataclass(frozen=True)
class Piecewise(Node):
    partition: Partition
    branches: tuple
    correlating = True

    def ev(self, x):
        return self.branches[self.partition.assign(x)].ev(x)

    def children(self):
        return self.branches


def iter_nodes(node: Node):
    yield node
    for c in node.children():
        yield from iter_nodes(c)


def is_correlating(node: Node) -> bool:
    for n in iter_nodes(node):
        if n.correlating and not (isinstance(n, Delta) and n.axes is not None and len(n.axes) == 1):
            return True
    return False


# -- simplification and structural pinning ----------------------------------


def xor(*items: Node) -> Node:
    flat: list[Node] = []
    bit = 0
    for it in items:
        for c in it.items if isinstance(it, Xor) else (it,):
            if isinstance(c, Const):
                bit ^= c.bit
            else:
                flat.append(c)
    # characteristic 2: identical summands cancel in pairs
    kept: list[Node] = []
    for c in flat:
        if c in kept:
            kept.remove(c)
        else:
            kept.append(c)
    if bit:
        if not kept:
            return ONE
        kept.append(ONE)
    if not kept:
        return ZERO
    if len(kept) == 1:
        return kept[0]
    return Xor(tuple(kept))


def conj(*items: Node) -> Node:
    flat: list[Node] = []
    for it in items:
        for c in it.items if isinstance(it, And) else (it,):
            if c == ZERO:
                return ZERO
            if c == ONE or c in flat:
                continue
            flat.append(c)
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def neg(item: Node) -> Node:
    if isinstance(item, Const):
        return Const(1 - item.bit)
    if isinstance(item, Not):
        return item.item
    return Not(item)


def _wrap(node: Node, assignment: dict) -> Node:
    for i, v in sorted(assignment.items()):
        node = PinCoord(i, v, node)
    return node


def pin_node(node: Node, assignment: dict) -> Node:
    """Substitute fixed values for coordinates, resolving atoms where possible."""
    if not assignment:
        return node
    a = assignment
    if isinstance(node, Const):
        return node
    if isinstance(node, (CoordLess, CoordIn, CoordIsInf, CoordEven)):
        if node.i in a:
            y = [None] * (node.i + 1)
            y[node.i] = a[node.i]
            return Const(node.ev(y))
        return node
    if isinstance(node, Delta):
        if node.axes is None:
            return _wrap(node, a)
        pinned = [ax for ax in node.axes if ax in a]
        if not pinned:
            return node
        vals = [a[ax] for ax in pinned]
        v = vals[0]
        if v is INF or any(w != v for w in vals) or v not in node.B:
            return ZERO
        rest = tuple(ax for ax in node.axes if ax not in a)
        return Delta(frozenset([v]), rest) if rest else ONE
    if isinstance(node, SigmaDelta):
        if node.src in a:
            s = a[node.src]
            if s is INF:
                return ZERO
            return pin_node(Delta(frozenset([ordinal_code(s)]), node.axes), a)
        return _wrap(node, {k: v for k, v in a.items() if k in node.axes})
    if isinstance(node, BelowMin):
        fixed = [ax for ax in node.axes if ax in a]
        limit = node.limit
        if fixed:
            vals = [node.cap if a[ax] is INF else _min([a[ax], node.cap]) for ax in fixed]
            if limit is not None:
                vals.append(limit)
            limit = _min(vals)
        rest = tuple(ax for ax in node.axes if ax not in a)
        if rest:
            out: Node = BelowMin(node.i, rest, node.cap, limit)
        else:
            out = CoordLess(node.i, node.cap if limit is None else limit)
        if node.i in a:
            return _wrap(out, {node.i: a[node.i]}) if rest else pin_node(out, {node.i: a[node.i]})
        return out
    if isinstance(node, Xor):
        return xor(*(pin_node(c, a) for c in node.items))
    if isinstance(node, And):
        return conj(*(pin_node(c, a) for c in node.items))
    if isinstance(node, Not):
        return neg(pin_node(node.item, a))
    if isinstance(node, PinCoord):
        inner = pin_node(node.item, {node.i: node.v})
        return pin_node(inner, {k: v for k, v in a.items() if k != node.i})
    if isinstance(node, PinLargeToInf):
        lifted = {}
        thresholds = list(node.thresholds)
        for k, v in a.items():
            t = thresholds[k]
            lifted[k] = INF if (t is not None and v is not INF and not _lt(v, t)) else v
            thresholds[k] = None
        inner = pin_node(node.item, lifted)
        if all(t is None for t in thresholds):
            return inner
        return PinLargeToInf(tuple(thresholds), inner)
    return _wrap(node, a)


def simplify(node: Node) -> Node:
    if isinstance(node, Xor):
        return xor(*(simplify(c) for c in node.items))
    if isinstance(node, And):
        return conj(*(simplify(c) for c in node.items))
    if isinstance(node, Not):
        return neg(simplify(node.item))
    if isinstance(node, PinCoord):
        return simplify(pin_node(node.item, {node.i: node.v})) if not isinstance(
            node.item, (PinCoord, Piecewise)
        ) else node
    return node


# -- FnExpr ------------------------------------------------------------------


@dataclass(frozen=True)
class FnExpr:
    node: Node
    domain: frozenset
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        if any(not 0 <= i < self.arity for i in self.domain):
            raise ExprError(f"domain {sorted(self.domain)} exceeds arity {self.arity}")

    def __call__(self, x: Point) -> int:
        return eval_fn(self, x)

    def __str__(self):
        return to_sexpr(self.node)


def fn(node: Node, domain: Iterable[int], arity: int) -> FnExpr:
    return FnExpr(node, frozenset(domain), arity)


def eval_fn(f: FnExpr, x: Point) -> int:
    if len(x) != f.arity:
        raise ExprError(f"point of length {len(x)} given to a function on {f.arity} axes")
    check_punctured(x)
    if not in_DA(x, f.domain):
        raise ExprError(f"point {x} is outside D_{sorted(f.domain)}")
    return f.node.ev(x)


def add(f: FnExpr, g: FnExpr) -> FnExpr:
    """Pointwise sum on D_A n D_B = D_(A u B)."""
    if f.arity != g.arity:
        raise ExprError("cannot add functions on different tuple lengths")
    return FnExpr(xor(f.node, g.node), f.domain | g.domain, f.arity)


def restrict_to(f: FnExpr, A2: Iterable[int]) -> FnExpr:
    A2 = frozenset(A2)
    if not f.domain <= A2:
        raise ExprError(f"cannot restrict D_{sorted(f.domain)} to non-superset index set {sorted(A2)}")
    return FnExpr(f.node, A2, f.arity)


def pin(f: FnExpr, assignment: dict) -> FnExpr:
    """Fix some coordinates; the domain drops the pinned indices."""
    return FnExpr(pin_node(f.node, assignment), f.domain - set(assignment), f.arity)


# -- continuity witnesses ------------------------------------------------------


@dataclass(frozen=True)
class ContinuityWitness:
    exceptions: dict = field(default_factory=dict)
    floors: dict = field(default_factory=dict)

    def neighborhood(self, x: Point) -> Neighborhood:
        return Neighborhood(
            tuple(x),
            facet_of(x),
            {j: frozenset(s) for j, s in self.exceptions.items()},
            dict(self.floors),
        )


def _merge(parts) -> tuple[dict, dict]:
    exc: dict = {}
    floors: dict = {}
    for e, fl in parts:
        for j, s in e.items():
            exc[j] = exc.get(j, frozenset()) | frozenset(s)
        for j, v in fl.items():
            floors[j] = v if j not in floors else max(floors[j], v, key=axis_key)
    return exc, floors


def _below(v: AxisValue) -> tuple[dict, dict]:
    # witness data for "y must not drop below v": finite set or floor
    return ({"set": frozenset(range(v))}, {}) if isinstance(v, int) else ({}, {"floor": v})


def _node_witness(node: Node, x: Point) -> tuple[dict, dict]:
    free = {j for j, v in enumerate(x) if v is INF}
    if isinstance(node, Const):
        return {}, {}
    if isinstance(node, Symbol):
        raise ExprError("symbols carry no continuity data")
    if isinstance(node, CoordLess):
        if node.i not in free:
            return {}, {}
        if isinstance(node.c, int):
            return {node.i: frozenset(range(node.c))}, {}
        return {}, {node.i: node.c}
    if isinstance(node, CoordIn):
        return ({node.i: node.S}, {}) if node.i in free else ({}, {})
    if isinstance(node, (CoordIsInf, CoordEven)):
        if node.i in free:
            raise DiscontinuityError(f"{to_sexpr(node)} is not continuous where x_{node.i} = inf")
        return {}, {}
    if isinstance(node, Delta):
        axes = node.axes if node.axes is not None else tuple(range(len(x)))
        fixed = [a for a in axes if a not in free]
        if fixed:
            v = x[fixed[0]]
            return {a: frozenset([v]) for a in axes if a in free}, {}
        return {a: node.B for a in axes}, {}
    if isinstance(node, SigmaDelta):
        if node.src not in free:
            return _node_witness(Delta(frozenset([ordinal_code(x[node.src])]), node.axes), x)
        fixed = [a for a in node.axes if a not in free]
        if not fixed:
            raise DiscontinuityError("sigma indicator with its source and all axes at infinity")
        v = x[fixed[0]]
        pre = ordinal_decode(v) if isinstance(v, int) else None
        return ({node.src: frozenset([pre])} if pre is not None else {}), {}
    if isinstance(node, BelowMin):
        if node.i in free:
            vals = [_min([x[a], node.cap]) for a in node.axes if a not in free] + [node.cap]
            if node.limit is not None:
                vals.append(node.limit)
            mu = _min(vals)
            if isinstance(mu, int):
                return {node.i: frozenset(range(mu))}, {}
            return {}, {node.i: mu}
        beta = x[node.i]
        if not _lt(beta, node.cap):
            return {}, {}
        free_axes = [a for a in node.axes if a in free]
        if isinstance(beta, int):
            return {a: frozenset(range(beta + 1)) for a in free_axes}, {}
        return {}, {a: add_finite(beta, 1) for a in free_axes}
    if isinstance(node, (Xor, And, Not)):
        return _merge(_node_witness(c, x) for c in node.children())
    if isinstance(node, PinCoord):
        y = list(x)
        y[node.i] = node.v
        exc, floors = _node_witness(node.item, tuple(y))
        exc.pop(node.i, None)
        floors.pop(node.i, None)
        return exc, floors
    if isinstance(node, PinLargeToInf):
        exc, floors = _node_witness(node.item, node.lift(x))
        return (
            {j: s for j, s in exc.items() if j in free},
            {j: v for j, v in floors.items() if j in free},
        )
    if isinstance(node, Piecewise):
        try:
            pexc, pfl = node.partition.local_witness(x)
        except PartitionError as e:
            raise DiscontinuityError(str(e)) from None
        i = node.partition.assign(x)
        return _merge([(pexc, pfl), _node_witness(node.branches[i], x)])
    raise ExprError(f"unknown node {node!r}")


def continuity_witness(f: FnExpr, x: Point) -> ContinuityWitness:
    """Exception sets (or floors) on the infinite coordinates of ``x`` on which f is constant."""
    check_punctured(x)
    if not in_DA(x, f.domain):
        raise ExprError(f"point {x} is outside D_{sorted(f.domain)}")
    if all(v is not INF for v in x):
        raise ExprError(f"{x} is isolated: no free coordinate")
    exc, floors = _node_witness(f.node, x)
    return ContinuityWitness(exc, floors)


# -- equivalence -------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    kind: str  # "equal" | "not_equal" | "verified_up_to_bound"
    witness: Optional[Point] = None
    bound: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.kind != "not_equal"


def axis_breakpoints(node: Node, arity: int) -> list[set]:
    """Per-axis values at which some atom of ``node`` can change."""
    out: list[set] = [set() for _ in range(arity)]

    def walk(n: Node):
        if isinstance(n, CoordLess):
            out[n.i].add(n.c)
        elif isinstance(n, CoordIn):
            out[n.i].update(n.S)
        elif isinstance(n, Delta):
            for a in n.axes if n.axes is not None else range(arity):
                out[a].update(n.B)
        elif isinstance(n, BelowMin):
            for v in (n.cap, n.limit):
                if v is not None:
                    out[n.i].add(v)
                    for a in n.axes:
                        out[a].add(v)
        elif isinstance(n, PinCoord):
            out[n.i].add(n.v) if n.v is not INF else None
        elif isinstance(n, PinLargeToInf):
            for j, t in enumerate(n.thresholds):
                if t is not None:
                    out[j].add(t)
        for c in n.children():
            walk(c)

    walk(node)
    return out


def axis_candidates(nodes: Sequence[Node], arity: int, extra: Iterable[int] = ()) -> list[list]:
    """One representative for every class of values an atom can distinguish."""
    cands = []
    per = [set() for _ in range(arity)]
    for n in nodes:
        for j, s in enumerate(axis_breakpoints(n, arity)):
            per[j] |= s
    for j in range(arity):
        pts = {0, *per[j], *extra}
        vals = set()
        ordered = sorted(pts, key=axis_key)
        for t, b in enumerate(ordered):
            nxt = ordered[t + 1] if t + 1 < len(ordered) else None
            for m in range(3):
                v = add_finite(b, m)
                if nxt is None or _lt(v, nxt):
                    vals.add(v)
        cands.append(sorted(vals, key=axis_key) + [INF])
    return cands


def _scan(f: FnExpr, g: FnExpr, cands) -> Optional[Point]:
    domain = f.domain | g.domain
    per_axis = [[v for v in cands[i] if not (i in domain and v is INF)] for i in range(f.arity)]
    for x in itertools.product(*per_axis):
        if all(v is INF for v in x):
            continue
        if f.node.ev(x) != g.node.ev(x):
            return x
    return None


def equiv_decide(f: FnExpr, g: FnExpr, bound: int = 4) -> Verdict:
    """Exact for expressions without coordinate-correlating atoms, bounded otherwise.

    The bounded grid is the naturals below ``bound`` plus every class
    representative of the atoms, plus infinity.
    """
    if f.arity != g.arity:
        raise ExprError("arity mismatch")
    nodes = [f.node, g.node]
    if not any(is_correlating(n) for n in nodes):
        w = _scan(f, g, axis_candidates(nodes, f.arity))
        return Verdict("not_equal", w) if w is not None else Verdict("equal")
    w = _scan(f, g, axis_candidates(nodes, f.arity, extra=range(bound)))
    if w is not None:
        return Verdict("not_equal", w, bound)
    return Verdict("verified_up_to_bound", None, bound)


# -- naive extension and cardinalities ---------------------------------------


def aleph_threshold(m: int) -> Optional[AxisValue]:
    """The least ordinal of size aleph_m, when representable below omega^omega."""
    return OMEGA if m == 0 else None


def naive_extend(f: FnExpr, lam, kappa) -> FnExpr:
    """Extend from X(lam)^- to X(kappa)^-: out-of-range coordinates become infinity,
    and the function vanishes where an out-of-range coordinate lies in the domain."""
    lam, kappa = tuple(lam), tuple(kappa)
    if len(lam) != len(kappa) or len(lam) != f.arity:
        raise ExprError("length mismatch between lambda, kappa and the function")
    if any(a > b for a, b in zip(lam, kappa)):
        raise ExprError("lambda must lie below kappa coordinatewise")
    thresholds = tuple(aleph_threshold(l) if l < k else None for l, k in zip(lam, kappa))
    if all(t is None for t in thresholds):
        return f
    guards = [CoordLess(i, thresholds[i]) for i in sorted(f.domain) if thresholds[i] is not None]
    body = f.node if isinstance(f.node, Const) else PinLargeToInf(thresholds, f.node)
    return FnExpr(conj(*guards, body), f.domain, f.arity)


def card_CA(kappa, A):
    from .cardinals import Aleph, Pow, TwoPow

    idx = tuple(kappa)
    n = len(idx) - 1
    A = frozenset(A)
    if A == frozenset(range(n + 1)):
        return TwoPow(idx[n])
    if not A:
        return Aleph(idx[n])
    comp = [i for i in range(n + 1) if i not in A]
    return Pow(Aleph(idx[max(comp)]), Aleph(idx[max(A)]))


# -- s-expressions -----------------------------------------------------------


def _tokens(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise ExprError("unexpected end of expression (missing ')')")
    tok = tokens[pos]
    if tok == "(":
        out = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _read(tokens, pos)
            out.append(item)
        if pos >= len(tokens):
            raise ExprError("unexpected end of expression (missing ')')")
        return out, pos + 1
    if tok == ")":
        raise ExprError("unbalanced ')'")
    return tok, pos + 1


def _ints(items) -> tuple:
    if not isinstance(items, list):
        raise ExprError(f"expected a parenthesized list, got {items!r}")
    return tuple(int(t) for t in items)


def _value(tok) -> AxisValue:
    if isinstance(tok, list):
        raise ExprError("expected an ordinal token")
    return parse_axis_value(tok)


def _build(form) -> Node:
    if isinstance(form, str):
        if form in ("0", "1"):
            return Const(int(form))
        raise ExprError(f"bare token {form!r} is not an expression")
    if not form:
        raise ExprError("empty form")
    head, args = form[0], form[1:]
    try:
        if head == "const":
            return Const(int(args[0]))
        if head == "less":
            return CoordLess(int(args[0]), _value(args[1]))
        if head == "in":
            return CoordIn(int(args[0]), frozenset(_value(a) for a in args[1:]))
        if head == "isinf":
            return CoordIsInf(int(args[0]))
        if head == "even":
            return CoordEven(int(args[0]))
        if head == "delta":
            return Delta(frozenset(_value(a) for a in args))
        if head == "delta-on":
            return Delta(frozenset(_value(a) for a in args[1:]), _ints(args[0]))
        if head == "sigma":
            return SigmaDelta(int(args[0]), _ints(args[1]))
        if head == "belowmin":
            cap = _value(args[2]) if len(args) > 2 else OMEGA
            limit = None if len(args) <= 3 or args[3] == "none" else _value(args[3])
            return BelowMin(int(args[0]), _ints(args[1]), cap, limit)
        if head == "xor":
            return Xor(tuple(_build(a) for a in args))
        if head == "and":
            return And(tuple(_build(a) for a in args))
        if head == "not":
            return Not(_build(args[0]))
        if head == "pin":
            return PinCoord(int(args[0]), _value(args[1]), _build(args[2]))
        if head == "pinlarge":
            ts = tuple(None if t == "-" else _value(t) for t in args[0])
            return PinLargeToInf(ts, _build(args[1]))
        if head == "sym":
            return Symbol(args[0])
        if head == "piecewise":
            return Piecewise(partition_by_name(args[0]), tuple(_build(a) for a in args[1:]))
    except (IndexError, ValueError) as e:
        raise ExprError(f"malformed ({head} ...): {e}") from None
    raise ExprError(f"unknown operator {head!r}")


def parse_sexpr(text: str) -> Node:
    tokens = _tokens(text)
    if not tokens:
        raise ExprError("empty expression")
    form, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ExprError("trailing tokens after expression")
    return _build(form)


def _fmt_set(S) -> str:
    return " ".join(format_ordinal(v) for v in sorted(S, key=axis_key))


def _fmt_axes(axes) -> str:
    return "(" + " ".join(str(a) for a in axes) + ")"


def to_sexpr(node: Node) -> str:
    if isinstance(node, Const):
        return str(node.bit)
    if isinstance(node, CoordLess):
        return f"(less {node.i} {format_ordinal(node.c)})"
    if isinstance(node, CoordIn):
        return f"(in {node.i} {_fmt_set(node.S)})".replace(" )", ")")
    if isinstance(node, CoordIsInf):
        return f"(isinf {node.i})"
    if isinstance(node, CoordEven):
        return f"(even {node.i})"
    if isinstance(node, Delta):
        if node.axes is None:
            return f"(delta {_fmt_set(node.B)})".replace(" )", ")")
        return f"(delta-on {_fmt_axes(node.axes)} {_fmt_set(node.B)})".replace(" )", ")")
    if isinstance(node, SigmaDelta):
        return f"(sigma {node.src} {_fmt_axes(node.axes)})"
    if isinstance(node, BelowMin):
        lim = "none" if node.limit is None else format_ordinal(node.limit)
        return f"(belowmin {node.i} {_fmt_axes(node.axes)} {format_ordinal(node.cap)} {lim})"
    if isinstance(node, Xor):
        return "(xor " + " ".join(to_sexpr(c) for c in node.items) + ")"
    if isinstance(node, And):
        return "(and " + " ".join(to_sexpr(c) for c in node.items) + ")"
    if isinstance(node, Not):
        return f"(not {to_sexpr(node.item)})"
    if isinstance(node, PinCoord):
        return f"(pin {node.i} {format_ordinal(node.v)} {to_sexpr(node.item)})"
    if isinstance(node, PinLargeToInf):
        ts = " ".join("-" if t is None else format_ordinal(t) for t in node.thresholds)
        return f"(pinlarge ({ts}) {to_sexpr(node.item)})"
    if isinstance(node, Symbol):
        return f"(sym {node.label})"
    if isinstance(node, Piecewise):
        name = getattr(node.partition, "name", None)
        if name not in ("min", "vmin"):
            raise ExprError("only min/vmin partitions have a text form")
        return f"(piecewise {name} " + " ".join(to_sexpr(b) for b in node.branches) + ")"
    raise ExprError(f"unknown node {node!r}")
