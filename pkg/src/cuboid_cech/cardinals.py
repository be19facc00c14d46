"""Symbolic aleph arithmetic below aleph_omega with assumption-relative comparison.

The comparison engine is sound but deliberately incomplete: it answers
``True``/``False`` only when the verdict follows from

* monotonicity of the alephs,
* ``2^aleph_a >= aleph_(a+1)`` (Cantor),
* monotonicity of ``2^aleph_a`` in ``a``,
* the Hausdorff formula ``aleph_p ^ aleph_q = max(aleph_p, 2^aleph_q)``
  (``= 2^aleph_q`` when ``p <= q``),
* the supplied ``2^aleph_a >= aleph_b`` assumptions,

and returns :data:`UNDECIDED` otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union


class Truth(Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    def __bool__(self):
        raise TypeError("three-valued verdicts must be compared explicitly")


TRUE, FALSE, UNDECIDED = Truth.TRUE, Truth.FALSE, Truth.UNDECIDED


@dataclass(frozen=True, order=True)
class Aleph:
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("aleph index must be a natural number")

    def __str__(self):
        return f"aleph({self.m})"


@dataclass(frozen=True)
class TwoPow:
    m: int

    def __str__(self):
        return f"2^aleph({self.m})"


@dataclass(frozen=True)
class Pow:
    base: Aleph
    exp: Aleph

    def __str__(self):
        return f"aleph({self.base.m})^aleph({self.exp.m})"


CardinalExpr = Union[Aleph, TwoPow, Pow]


@dataclass(frozen=True)
class KappaTuple:
    """Weakly increasing aleph indices ``m_0 <= ... <= m_n`` (kappa_i = aleph_{m_i})."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if not idx:
            raise ValueError("kappa tuple must be nonempty")
        if any(i < 0 for i in idx):
            raise ValueError("aleph indices must be natural numbers")
        if any(a > b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"kappa tuple {idx} is not weakly increasing")

    @classmethod
    def parse(cls, text: str) -> "KappaTuple":
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def n(self) -> int:
        return len(self.indices) - 1

    def __len__(self):
        return len(self.indices)

    def __getitem__(self, i):
        return self.indices[i]

    def __iter__(self):
        return iter(self.indices)

    def __le__(self, other: "KappaTuple"):
        return len(self) == len(other) and all(a <= b for a, b in zip(self, other))

    def __str__(self):
        return "(" + ",".join(f"aleph{m}" for m in self.indices) + ")"


@dataclass(frozen=True)
class AssumptionSet:
    """Hypotheses of the form ``2^aleph_a >= aleph_b``, stored as ``(a, b)`` pairs.

    Pairs with ``b <= a + 1`` are ZFC theorems and are dropped on construction.
    """

    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        kept = frozenset((int(a), int(b)) for a, b in self.pairs if b > a + 1)
        object.__setattr__(self, "pairs", kept)

    @classmethod
    def parse(cls, texts: Iterable[str]) -> "AssumptionSet":
        return cls(frozenset(parse_assumption(t) for t in texts))

    def best_lower_bound(self, a: int) -> int:
        """Largest ``b`` with ``2^aleph_a >= aleph_b`` derivable from the stored pairs."""
        best = a + 1
        for a2, b2 in self.pairs:
            if a2 <= a:
                best = max(best, b2)
        return best

    def __str__(self):
        return ", ".join(f"2^aleph({a}) >= aleph({b})" for a, b in sorted(self.pairs)) or "{}"


EMPTY = AssumptionSet()

_ALEPH = r"aleph\((\d+)\)"
_ASSUME = re.compile(rf"^2\^{_ALEPH}>={_ALEPH}$")


def parse_assumption(text: str) -> tuple[int, int]:
    m = _ASSUME.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"assumption must look like '2^aleph(1) >= aleph(3)', got {text!r}")
    return int(m.group(1)), int(m.group(2))


def parse_cardinal(text: str) -> CardinalExpr:
    t = text.replace(" ", "")
    if m := re.fullmatch(_ALEPH, t):
        return Aleph(int(m.group(1)))
    if m := re.fullmatch(rf"2\^{_ALEPH}", t):
        return TwoPow(int(m.group(1)))
    if m := re.fullmatch(rf"{_ALEPH}\^{_ALEPH}", t):
        return Pow(Aleph(int(m.group(1))), Aleph(int(m.group(2))))
    raise ValueError(f"cannot parse cardinal {text!r}")


def cofinality(c: Aleph) -> Aleph:
    # aleph_0 and successor alephs are regular; nothing else is in scope
    return c


def _atoms(c: CardinalExpr) -> list[Union[Aleph, TwoPow]]:
    """Rewrite to a max of Aleph/TwoPow atoms."""
    if isinstance(c, Pow):
        if c.base.m <= c.exp.m:
            return [TwoPow(c.exp.m)]
        return [c.base, TwoPow(c.exp.m)]
    return [c]


def _leq_atom(a, b, ctx: AssumptionSet) -> Truth:
    if isinstance(a, Aleph) and isinstance(b, Aleph):
        return TRUE if a.m <= b.m else FALSE
    if isinstance(a, TwoPow) and isinstance(b, TwoPow):
        return TRUE if a.m <= b.m else UNDECIDED
    if isinstance(a, Aleph):  # aleph_m <= 2^aleph_b
        return TRUE if a.m <= ctx.best_lower_bound(b.m) else UNDECIDED
    # 2^aleph_a <= aleph_b
    if ctx.best_lower_bound(a.m) > b.m:
        return FALSE
    return UNDECIDED


def _any(verdicts) -> Truth:
    verdicts = list(verdicts)
    if TRUE in verdicts:
        return TRUE
    if all(v is FALSE for v in verdicts):
        return FALSE
    return UNDECIDED


def _all(verdicts) -> Truth:
    verdicts = list(verdicts)
    if FALSE in verdicts:
        return FALSE
    if all(v is TRUE for v in verdicts):
        return TRUE
    return UNDECIDED


def card_leq(a: CardinalExpr, b: CardinalExpr, ctx: AssumptionSet = EMPTY) -> Truth:
    """Three-valued ``a <= b``."""
    # max(A) <= max(B)  iff  every atom of A is <= some atom of B
    return _all(_any(_leq_atom(x, y, ctx) for y in _atoms(b)) for x in _atoms(a))


def card_lt(a: CardinalExpr, b: CardinalExpr, ctx: AssumptionSet = EMPTY) -> Truth:
    v = card_leq(b, a, ctx)
    return {TRUE: FALSE, FALSE: TRUE, UNDECIDED: UNDECIDED}[v]
