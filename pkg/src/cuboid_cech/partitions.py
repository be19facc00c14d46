"""Assignment rules X(kappa)^- -> {0..n}: the min rule, the virtual-minimum rule and
explicit finite tables.  Ties always go to the smallest index."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .ordinals import INF, AxisValue, add_finite, axis_key, inj_le, inj_le_inverse
from .space import Point, check_punctured


class PartitionError(ValueError):
    pass


class InfiniteFiber(PartitionError):
    """Raised when the set of values landing in a piece is not finite."""


def _order(item):
    v, i = item
    return (axis_key(v), i)


class Partition:
    name = "partition"

    def assign(self, x: Point) -> int:
        raise NotImplementedError

    def local_witness(self, x: Point):
        """Exceptions/floors on the free axes of ``x`` keeping ``assign`` constant."""
        raise PartitionError(f"{self.name} partition has no local witness rule")


@dataclass(frozen=True)
class MinRule(Partition):
    name = "min"

    def assign(self, x: Point) -> int:
        check_punctured(x)
        return min(((v, i) for i, v in enumerate(x) if v is not INF), key=_order)[1]

    def local_witness(self, x: Point):
        check_punctured(x)
        mu = min((v for v in x if v is not INF), key=axis_key)
        free = [j for j, v in enumerate(x) if v is INF]
        if isinstance(mu, int):
            return {j: frozenset(range(mu + 1)) for j in free}, {}
        return {}, {j: add_finite(mu, 1) for j in free}


def vmin_index(
    x: Point, inj: Callable[[AxisValue, AxisValue], AxisValue] = inj_le
) -> int:
    """Index of the virtual minimum over the finite coordinates of ``x``.

    Repeatedly drop the maximum and re-code the survivors through the
    injection attached to that maximum; with two entries left take the min.
    """
    check_punctured(x)
    items = [(v, i) for i, v in enumerate(x) if v is not INF]
    while len(items) > 2:
        top = max(items, key=_order)
        beta = top[0]
        items = [(inj(beta, v), i) for v, i in items if i != top[1]]
    return min(items, key=_order)[1]


def _fiber(fixed: list, j: int, inj, inj_inv) -> set:
    """All values v with vmin(fixed + [(v, j)]) at index j."""
    if not fixed:
        raise InfiniteFiber("a lone coordinate is always its own minimum")
    if len(fixed) == 1:
        o, io = fixed[0]
        if not isinstance(o, int):
            raise InfiniteFiber(f"infinitely many ordinals lie below {o}")
        vals = set(range(o))
        if j < io:
            vals.add(o)
        return vals
    top = max(fixed, key=_order)
    beta = top[0]
    coded = [(inj(beta, v), i) for v, i in fixed if i != top[1]]
    out = set()
    for w in _fiber(coded, j, inj, inj_inv):
        v = inj_inv(beta, w)
        if v is not None and _order((v, j)) < _order(top):
            out.add(v)
    return out


@dataclass(frozen=True)
class VminRule(Partition):
    """Virtual-minimum rule; the injection family is a constructor parameter."""

    inj: Callable = field(default=inj_le)
    inj_inverse: Callable = field(default=inj_le_inverse)
    name = "vmin"

    def assign(self, x: Point) -> int:
        return vmin_index(x, self.inj)

    def local_witness(self, x: Point):
        # one free axis, natural fixed values: a large y_j is dropped first and the
        # re-coding of naturals is order preserving, so the outcome matches x
        check_punctured(x)
        free = [j for j, v in enumerate(x) if v is INF]
        fixed = [v for v in x if v is not INF]
        if len(free) == 1 and len(fixed) == 1:
            return MinRule().local_witness(x)
        if len(free) == 1 and all(isinstance(v, int) for v in fixed):
            return {free[0]: frozenset(range(max(fixed) + 1))}, {}
        raise PartitionError("virtual-minimum witness needs one free axis and natural fixed values")

    def fiber(self, x: Point, j: int) -> set:
        """Values of coordinate ``j`` that put ``x`` into piece ``j`` (others fixed, finite)."""
        fixed = [(v, i) for i, v in enumerate(x) if i != j and v is not INF]
        return _fiber(fixed, j, self.inj, self.inj_inverse)


@dataclass(frozen=True)
class FiniteTable(Partition):
    table: Mapping = field(default_factory=dict)
    name = "table"

    def assign(self, x: Point) -> int:
        check_punctured(x)
        try:
            return self.table[tuple(x)]
        except KeyError:
            raise PartitionError(f"point {x} is outside the finite table") from None

    def __hash__(self):
        return hash(tuple(sorted(self.table.items(), key=repr)))


def partition_by_name(name: str) -> Partition:
    if name == "min":
        return MinRule()
    if name == "vmin":
        return VminRule()
    raise PartitionError(f"unknown partition rule {name!r} (expected 'min' or 'vmin')")
