"""Ordinals below omega^omega in Cantor normal form, plus the point at infinity.

Finite coordinates are stored as plain ``int`` whenever possible; an
:class:`Ordinal` instance is only needed for values >= omega.  Use
:func:`ordinal` to normalize user input into that canonical shape.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Union


class OrdinalError(ValueError):
    pass


@total_ordering
class _Infinity:
    """The compactification point; strictly above every ordinal."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("cuboid-infinity")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@total_ordering
@dataclass(frozen=True, eq=False)
class Ordinal:
    """Sum of ``w^e * c`` over ``terms`` with strictly decreasing exponents."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if e < 0 or c < 1:
                raise OrdinalError(f"bad CNF term w^{e}*{c}")
            if prev is not None and e >= prev:
                raise OrdinalError("CNF exponents must strictly decrease")
            prev = e

    @property
    def degree(self) -> int:
        return self.terms[0][0] if self.terms else 0

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def __eq__(self, other):
        if isinstance(other, (Ordinal, int)) and not isinstance(other, bool):
            return _terms(self) == _terms(other)
        if other is INF:
            return False
        return NotImplemented

    def __lt__(self, other):
        if other is INF:
            return True
        if isinstance(other, (Ordinal, int)):
            return _terms(self) < _terms(other)
        return NotImplemented

    def __hash__(self):
        if self.is_finite:
            return hash(self.finite_part)
        return hash(self.terms)

    def __repr__(self):
        return format_ordinal(self)

    __str__ = __repr__


AxisValue = Union[int, Ordinal, _Infinity]

OMEGA = Ordinal(((1, 1),))


def _terms(v) -> tuple:
    if isinstance(v, Ordinal):
        return v.terms
    if v < 0:
        raise OrdinalError(f"negative ordinal {v}")
    return ((0, v),) if v else ()


def ordinal(v) -> AxisValue:
    """Canonical axis value: ``int`` for finite ordinals, ``Ordinal`` above omega."""
    if v is INF:
        return INF
    if isinstance(v, bool):
        raise OrdinalError("booleans are not ordinals")
    if isinstance(v, int):
        if v < 0:
            raise OrdinalError(f"negative ordinal {v}")
        return v
    if isinstance(v, Ordinal):
        return v.finite_part if v.is_finite else v
    if isinstance(v, str):
        return parse_axis_value(v)
    raise OrdinalError(f"not an ordinal: {v!r}")


def from_terms(terms: Iterable[tuple[int, int]]) -> AxisValue:
    return ordinal(Ordinal(tuple((e, c) for e, c in terms if c)))


def omega_power(e: int, c: int = 1) -> AxisValue:
    return from_terms([(e, c)])


def is_finite(v: AxisValue) -> bool:
    return isinstance(v, int)


def ord_cmp(a: AxisValue, b: AxisValue) -> int:
    """-1, 0 or 1; infinity sits above every ordinal."""
    ka, kb = axis_key(a), axis_key(b)
    return (ka > kb) - (ka < kb)


def axis_key(v: AxisValue) -> tuple:
    if v is INF:
        return (1,)
    return (0, _terms(v))


def ord_parity(a: AxisValue) -> str:
    if a is INF:
        raise OrdinalError("infinity has no parity")
    fin = a if isinstance(a, int) else a.finite_part
    return "even" if fin % 2 == 0 else "odd"


def is_even(a: AxisValue) -> bool:
    return a is not INF and ord_parity(a) == "even"


def add_finite(a: AxisValue, m: int) -> AxisValue:
    """``a + m`` for finite ``m`` (the only addition the package needs)."""
    if isinstance(a, int):
        return a + m
    if m == 0:
        return a
    terms = list(a.terms)
    if terms[-1][0] == 0:
        terms[-1] = (0, terms[-1][1] + m)
    else:
        terms.append((0, m))
    return Ordinal(tuple(terms))


def degree(a: AxisValue) -> int:
    return 0 if isinstance(a, int) else a.degree


# -- text syntax -------------------------------------------------------------

_TERM = re.compile(r"^(?:(?P<w>w)(?:\^(?P<e>\d+))?(?:\*(?P<c1>\d+))?|(?P<n>\d+))$")


def parse_ordinal(text: str) -> AxisValue:
    """Parse ``w^2*3 + w*1 + 4`` style text (``w`` stands for omega)."""
    src = text.replace(" ", "")
    if not src:
        raise OrdinalError("empty ordinal")
    acc: dict[int, int] = {}
    order: list[int] = []
    for part in src.split("+"):
        m = _TERM.match(part)
        if not m:
            raise OrdinalError(f"cannot parse ordinal term {part!r} in {text!r}")
        if m.group("n") is not None:
            e, c = 0, int(m.group("n"))
        else:
            e = int(m.group("e")) if m.group("e") else 1
            c = int(m.group("c1")) if m.group("c1") else 1
        if order and e >= order[-1]:
            raise OrdinalError(f"terms of {text!r} are not in Cantor normal form")
        order.append(e)
        acc[e] = c
    return from_terms((e, acc[e]) for e in order)


def parse_axis_value(text: str) -> AxisValue:
    t = text.strip()
    if t in ("inf", "∞", "oo"):
        return INF
    return parse_ordinal(t)


def format_ordinal(v: AxisValue) -> str:
    if v is INF:
        return "inf"
    if isinstance(v, int):
        return str(v)
    parts = []
    for e, c in v.terms:
        if e == 0:
            parts.append(str(c))
            continue
        base = "w" if e == 1 else f"w^{e}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts) if parts else "0"


# -- the injection family ----------------------------------------------------

def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    # w = floor((sqrt(8z+1)-1)/2), computed exactly
    from math import isqrt

    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def _code_length(beta: AxisValue) -> int:
    # number of CNF exponents available to ordinals strictly below beta
    d = degree(beta)
    if isinstance(beta, Ordinal) and beta.terms == ((d, 1),):
        return d
    return d + 1


def _fold(vec: list[int]) -> int:
    code = vec[-1]
    for a in reversed(vec[:-1]):
        code = cantor_pair(a, code)
    return code


def _unfold(code: int, length: int) -> list[int]:
    vec = []
    for _ in range(length - 1):
        a, code = cantor_unpair(code)
        vec.append(a)
    vec.append(code)
    return vec


def inj_e(beta: AxisValue, x: AxisValue) -> int | AxisValue:
    """Injection of ``beta`` into ``|beta|``: identity below omega, a natural code above.

    For infinite ``beta`` the coefficient vector of ``x`` (exponents from the
    top available exponent down to 0) is folded with the Cantor pairing.
    """
    beta, x = ordinal(beta), ordinal(x)
    if beta is INF or x is INF:
        raise OrdinalError("inj_e is defined on ordinals only")
    if not axis_key(x) < axis_key(beta):
        raise OrdinalError(f"inj_e needs x < beta, got x={x}, beta={beta}")
    if isinstance(beta, int):
        return x
    length = _code_length(beta)
    xo = x if isinstance(x, Ordinal) else Ordinal(_terms(x))
    return _fold([xo.coefficient(e) for e in range(length - 1, -1, -1)])


def inj_e_inverse(beta: AxisValue, code: int) -> AxisValue | None:
    """Preimage of ``code`` under ``inj_e(beta, .)``, or None if outside the image."""
    beta = ordinal(beta)
    if isinstance(beta, int):
        return code if 0 <= code < beta else None
    length = _code_length(beta)
    vec = _unfold(code, length)
    x = from_terms((length - 1 - i, c) for i, c in enumerate(vec))
    if axis_key(x) < axis_key(beta):
        return x
    return None


def inj_le(beta: AxisValue, x: AxisValue) -> int | AxisValue:
    """Injection of ``beta + 1`` into ``|beta|`` (needed when the maximum is tied)."""
    beta, x = ordinal(beta), ordinal(x)
    if isinstance(beta, int):
        if not (isinstance(x, int) and x <= beta):
            raise OrdinalError(f"inj_le needs x <= beta, got x={x}, beta={beta}")
        return x
    if x == beta:
        return 0
    return inj_e(beta, x) + 1


def inj_le_inverse(beta: AxisValue, code: int) -> AxisValue | None:
    beta = ordinal(beta)
    if isinstance(beta, int):
        return code if 0 <= code <= beta else None
    if code == 0:
        return beta
    return inj_e_inverse(beta, code - 1)


def ordinal_code(x: AxisValue) -> int:
    """One fixed injection of all ordinals below omega^omega into the naturals."""
    x = ordinal(x)
    d = degree(x)
    return cantor_pair(d, inj_e(omega_power(d + 1), x))


def ordinal_decode(code: int) -> AxisValue | None:
    d, rest = cantor_unpair(code)
    x = inj_e_inverse(omega_power(d + 1), rest)
    if x is None or degree(x) != d:
        return None
    return x
