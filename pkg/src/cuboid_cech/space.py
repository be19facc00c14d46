"""Points of the cuboid X(kappa), its facets, faces and basic neighborhoods."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .cardinals import KappaTuple
from .ordinals import (
    INF,
    AxisValue,
    Ordinal,
    axis_key,
    format_ordinal,
    from_terms,
    ordinal,
    parse_axis_value,
)

Point = tuple  # tuple[AxisValue, ...]


class PointError(ValueError):
    pass


def point(*coords) -> Point:
    """Build a canonical point; accepts ints, Ordinals, ``INF`` or strings."""
    if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
        coords = tuple(coords[0])
    return tuple(ordinal(c) for c in coords)


def is_all_infinite(x: Point) -> bool:
    return all(c is INF for c in x)


def check_punctured(x: Point) -> None:
    if is_all_infinite(x):
        raise PointError("the all-infinity point is deleted from X(kappa)^-")


def facet_of(x: Point) -> frozenset:
    return frozenset(i for i, c in enumerate(x) if c is not INF)


def in_DA(x: Point, A: Iterable[int]) -> bool:
    return all(x[i] is not INF for i in A)


def parse_point(text: str) -> Point:
    """``(2, inf, w+1)`` -> point."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    if not t.strip():
        return ()
    return tuple(parse_axis_value(p) for p in t.split(","))


def format_point(x: Point) -> str:
    return "(" + ", ".join(format_ordinal(c) for c in x) + ")"


def point_to_json(x: Point) -> list[str]:
    return [format_ordinal(c) for c in x]


def point_from_json(data: Sequence[str]) -> Point:
    return tuple(parse_axis_value(str(s)) for s in data)


def index_set_str(A: Iterable[int]) -> str:
    return "".join(str(i) for i in sorted(A))


@dataclass(frozen=True)
class Neighborhood:
    """Basic open set around ``base``: agree on ``facet``; elsewhere be infinite or avoid
    the exception set.  ``floors`` holds threshold-form witnesses (values must also be
    at or above the floor) used for atoms whose constancy region is a final segment."""

    base: Point
    facet: frozenset
    exceptions: Mapping[int, frozenset] = field(default_factory=dict)
    floors: Mapping[int, AxisValue] = field(default_factory=dict)

    def __post_init__(self):
        if facet_of(self.base) != frozenset(self.facet):
            raise PointError("neighborhood base must lie exactly on its facet")
        object.__setattr__(self, "facet", frozenset(self.facet))
        for j in list(self.exceptions) + list(self.floors):
            if j in self.facet:
                raise PointError(f"coordinate {j} is fixed by the facet")

    def free_axes(self) -> list[int]:
        return [j for j in range(len(self.base)) if j not in self.facet]


def neighborhood_contains(N: Neighborhood, y: Point) -> bool:
    if len(y) != len(N.base):
        return False
    for i in N.facet:
        if y[i] != N.base[i]:
            return False
    for j in N.free_axes():
        v = y[j]
        if v is INF:
            continue
        if v in N.exceptions.get(j, ()):
            return False
        floor = N.floors.get(j)
        if floor is not None and axis_key(v) < axis_key(floor):
            return False
    return True


def _random_ordinal(rng: random.Random, lo: AxisValue) -> AxisValue:
    """A pseudo-random ordinal >= lo, biased towards both small and large values."""
    lo = ordinal(lo)
    kind = rng.random()
    if isinstance(lo, int):
        if kind < 0.5:
            return lo + rng.randrange(0, 40)
        if kind < 0.8:
            return lo + rng.randrange(10**3, 10**6)
        return from_terms([(rng.randrange(1, 4), rng.randrange(1, 5)), (0, rng.randrange(0, 9))])
    # lo infinite: stay in its own degree or jump above it
    e = lo.degree
    if kind < 0.6:
        terms = list(lo.terms)
        if terms[-1][0] == 0:
            terms[-1] = (0, terms[-1][1] + rng.randrange(0, 50))
        else:
            terms.append((0, rng.randrange(0, 50)))
        return from_terms(terms)
    return from_terms([(e + rng.randrange(1, 3), rng.randrange(1, 4)), (0, rng.randrange(0, 9))])


def sample_neighborhood(N: Neighborhood, seed: int, count: int) -> list[Point]:
    """Deterministic sample of points inside ``N``.

    The first points put each free coordinate at infinity in turn; the rest draw
    finite values (small and huge) that avoid the exceptions.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    free = N.free_axes()
    out: list[Point] = []

    def fill(forced_inf: set[int]) -> Point:
        y = list(N.base)
        for j in free:
            if j in forced_inf or rng.random() < 0.25:
                y[j] = INF
                continue
            lo = N.floors.get(j, 0)
            for _ in range(1000):
                v = _random_ordinal(rng, lo)
                if v not in N.exceptions.get(j, ()):
                    break
            y[j] = v
        return tuple(y)

    if free:
        out.append(tuple(N.base))
    for j in free:
        if len(out) >= count:
            break
        out.append(fill({j}))
    while len(out) < count:
        out.append(fill(set()))
    return out[:count]


def enumerate_truncated(
    A: Iterable[int], kappa: KappaTuple | int, bound: int, punctured: bool = True
) -> Iterator[Point]:
    """Points of D_A whose finite coordinates are naturals below ``bound``.

    ``kappa`` may be a :class:`KappaTuple` or just the tuple length.
    """
    length = len(kappa) if isinstance(kappa, KappaTuple) else int(kappa)
    A = frozenset(A)
    axes = [
        range(bound) if i in A else itertools.chain(range(bound), (INF,))
        for i in range(length)
    ]
    for x in itertools.product(*(list(a) for a in axes)):
        if punctured and is_all_infinite(x):
            continue
        yield x


def grid_points(length: int, axis_values: Sequence[Sequence[AxisValue]], A=frozenset(), punctured=True):
    """Cartesian product of per-axis candidate values, restricted to D_A."""
    A = frozenset(A)
    per_axis = [[v for v in axis_values[i] if not (i in A and v is INF)] for i in range(length)]
    for x in itertools.product(*per_axis):
        if punctured and is_all_infinite(x):
            continue
        yield x


def points_json(points: Iterable[Point]) -> str:
    return json.dumps([point_to_json(p) for p in points])


__all__ = [
    "INF",
    "Ordinal",
    "Point",
    "Neighborhood",
    "facet_of",
    "in_DA",
    "neighborhood_contains",
    "sample_neighborhood",
    "enumerate_truncated",
    "point",
    "parse_point",
    "format_point",
]
