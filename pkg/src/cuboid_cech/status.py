"""Decide vanishing of H^k(X(kappa)^-; Z/2) where an implemented theorem applies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .cardinals import EMPTY, TRUE, Aleph, AssumptionSet, KappaTuple, TwoPow, card_leq
from .citations import cite
from .fubini import fubini_exists

ZERO, NONZERO, UNKNOWN = "Zero", "Nonzero", "Unknown"


@dataclass(frozen=True)
class StatusVerdict:
    verdict: str
    rule: Optional[str]
    citation: Optional[str]
    matched_open_question: Optional[str] = None
    detail: Optional[str] = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "rule": self.rule, "citation": self.citation}
        if self.matched_open_question:
            out["matchedOpenQuestion"] = self.matched_open_question
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class Fixture:
    kappa: KappaTuple
    k: int
    question: str
    assumptions: tuple = ()
    expected_with_assumptions: Optional[str] = None


FIXTURES = (
    Fixture(KappaTuple((1, 2, 2)), 1, "is H^1 of X(aleph1,aleph2,aleph2)^- zero or nonzero?"),
    Fixture(KappaTuple((2, 2, 2)), 1, "is H^1 of X(aleph2,aleph2,aleph2)^- zero or nonzero?"),
    Fixture(
        KappaTuple((1, 2, 3)),
        1,
        "is H^1 of X(aleph1,aleph2,aleph3)^- zero? (nonzero under 2^aleph1 >= aleph3)",
        ("2^aleph(1) >= aleph(3)",),
        NONZERO,
    ),
    Fixture(KappaTuple((0, 0, 0, 1)), 2, "is H^2 of X(aleph0,aleph0,aleph0,aleph1)^- zero or nonzero?"),
)


def fixtures() -> tuple:
    return FIXTURES


def _open_question(kappa: KappaTuple, k: int) -> Optional[str]:
    for fx in FIXTURES:
        if fx.kappa == kappa and fx.k == k:
            return fx.question
    return None


def _as_kappa(kappa) -> KappaTuple:
    if isinstance(kappa, KappaTuple):
        return kappa
    if isinstance(kappa, str):
        return KappaTuple.parse(kappa)
    return KappaTuple(tuple(kappa))


# -- individual rules ----------------------------------------------------------


def _top_nonzero(kappa: KappaTuple) -> bool:
    return all(m >= i for i, m in enumerate(kappa))


def rule_d(kappa: KappaTuple, k: int, ctx: AssumptionSet) -> bool:
    """Diagonal cocycle: kappa_(n-k) < cf kappa_(n-k+1) and kappa_(n-k+1) <= 2^kappa_0."""
    n = kappa.n
    if not 0 < k < n:
        return False
    lo, hi = kappa[n - k], kappa[n - k + 1]
    return lo < hi and card_leq(Aleph(hi), TwoPow(kappa[0]), ctx) is TRUE


def rule_e(kappa: KappaTuple, k: int) -> bool:
    """aleph_0 repeated z >= 1 times, then strictly increasing uncountable entries."""
    z = kappa.n - k
    if z < 1 or k < 1:
        return False
    head, tail = kappa.indices[:z], kappa.indices[z:]
    return all(m == 0 for m in head) and tail[0] >= 1 and all(a < b for a, b in zip(tail, tail[1:]))


def _base_nonzero(kappa: KappaTuple, k: int, ctx: AssumptionSet) -> Optional[str]:
    n = kappa.n
    if k == n and _top_nonzero(kappa):
        return "b"
    if k < n and rule_d(kappa, k, ctx):
        return "d"
    if k < n and rule_e(kappa, k):
        return "e"
    return None


def _below(kappa: KappaTuple):
    """Weakly increasing index tuples coordinatewise below kappa."""
    ranges = [range(m + 1) for m in kappa]
    for idx in itertools.product(*ranges):
        if all(a <= b for a, b in zip(idx, idx[1:])):
            yield KappaTuple(idx)


def rule_f_witness(kappa: KappaTuple, k: int, ctx: AssumptionSet) -> Optional[KappaTuple]:
    if not 0 <= k <= kappa.n or not fubini_exists(kappa, k).exists:
        return None
    for lam in _below(kappa):
        if _base_nonzero(lam, k, ctx):
            return lam
    return None


def zero_rules(kappa: KappaTuple, k: int, ctx: AssumptionSet = EMPTY) -> list[str]:
    n = kappa.n
    fired = []
    if k > n:
        fired.append("a")
    if k == n and not _top_nonzero(kappa):
        fired.append("b")
    if k < n and fubini_exists(kappa, k - 1).exists:
        fired.append("c")
    return fired


def nonzero_rules(kappa: KappaTuple, k: int, ctx: AssumptionSet = EMPTY) -> list[str]:
    n = kappa.n
    if k > n:
        return []
    fired = []
    if k == n and _top_nonzero(kappa):
        fired.append("b")
    if k < n and rule_d(kappa, k, ctx):
        fired.append("d")
    if k < n and rule_e(kappa, k):
        fired.append("e")
    if rule_f_witness(kappa, k, ctx) is not None:
        fired.append("f")
    return fired


_CITES = {
    ("a", ZERO): "empty-degree",
    ("b", ZERO): "top-vanishing",
    ("b", NONZERO): "top-nonvanishing",
    ("c", ZERO): "fubini-vanishing",
    ("d", NONZERO): "diagonal-cocycle",
    ("e", NONZERO): "limit-of-coboundaries",
    ("f", NONZERO): "fubini-embedding",
}


def status(kappa, k: int, ctx: AssumptionSet = EMPTY) -> StatusVerdict:
    kappa = _as_kappa(kappa)
    if k <= 0:
        raise ValueError("degree k must be >= 1 (H^0 is out of scope)")
    n = kappa.n
    oq = _open_question(kappa, k)

    def verdict(v, rule, detail=None):
        return StatusVerdict(v, rule, cite(_CITES[(rule, v)]), oq, detail)

    if k > n:
        return verdict(ZERO, "a")
    if k == n:
        return verdict(NONZERO if _top_nonzero(kappa) else ZERO, "b")
    if fubini_exists(kappa, k - 1).exists:
        return verdict(ZERO, "c", f"a {k - 1}-Fubini partition exists")
    if rule_d(kappa, k, ctx):
        return verdict(NONZERO, "d")
    if rule_e(kappa, k):
        return verdict(NONZERO, "e", f"z = {n - k}")
    lam = rule_f_witness(kappa, k, ctx)
    if lam is not None:
        return verdict(NONZERO, "f", f"embeds from lambda = {lam}")
    return StatusVerdict(UNKNOWN, "g", cite("open-question"), oq)


@dataclass
class SoundnessReport:
    scanned: int = 0
    conflicts: list = field(default_factory=list)
    rule_f_violations: list = field(default_factory=list)


SCAN_CONTEXTS = (EMPTY, AssumptionSet(frozenset({(0, 2)})), AssumptionSet(frozenset({(1, 3)})))


def soundness_scan(max_index: int = 4, max_length: int = 5, max_k: int = 5, contexts=SCAN_CONTEXTS) -> SoundnessReport:
    """Run the Zero and Nonzero rule families independently over a grid."""
    rep = SoundnessReport()
    for length in range(1, max_length + 1):
        for idx in itertools.combinations_with_replacement(range(max_index + 1), length):
            kappa = KappaTuple(idx)
            for k in range(1, max_k + 1):
                for ctx in contexts:
                    rep.scanned += 1
                    z, nz = zero_rules(kappa, k, ctx), nonzero_rules(kappa, k, ctx)
                    if z and nz:
                        rep.conflicts.append((str(kappa), k, str(ctx), z, nz))
                    if "f" in nz:
                        lam = rule_f_witness(kappa, k, ctx)
                        if not (fubini_exists(kappa, k).exists and status(lam, k, ctx).verdict == NONZERO):
                            rep.rule_f_violations.append((str(kappa), k, str(ctx)))
    return rep
