"""The twelve acceptance checks, shared by ``verify`` and the test suite."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import fnexpr as fx
from . import witnesses as wt
from .cardinals import EMPTY, AssumptionSet, KappaTuple
from .cech import Cochain, cochain, cocycle_from_phi, face_restrict, index_sets, is_cocycle
from .fubini import (
    condition3_profile,
    embed,
    modification_table,
    modify,
    stabilizes,
    trivializer_table,
)
from .oracle import FiniteModel, Grid, betti, random_cocycle, top_quotient_dim
from .ordinals import INF, OMEGA, add_finite, from_terms
from .partitions import MinRule, VminRule
from .space import in_DA, sample_neighborhood
from .status import NONZERO, UNKNOWN, ZERO, fixtures, rule_d, soundness_scan, status

# Printed tables, row by row (label, Y_0..Y_3).
TRIVIALIZER_TABLE = [
    ["g_{01}", "0", "0", "f_{012}", "f_{013}"],
    ["g_{02}", "0", "f_{012}", "0", "f_{023}"],
    ["g_{03}", "0", "f_{013}", "f_{023}", "0"],
    ["g_{12}", "f_{012}", "0", "0", "f_{123}"],
    ["g_{13}", "f_{013}", "0", "f_{123}", "0"],
    ["g_{23}", "f_{023}", "f_{123}", "0", "0"],
]
MODIFICATION_TABLE = [
    ["f^Mod_{01}", "f_{01}", "f_{01}", "f_{01}+f_{02}", "f_{03}+f_{13}"],
    ["f^Mod_{02}", "f_{02}", "f_{01}+f_{12}", "f_{02}", "f_{03}+f_{23}"],
    ["f^Mod_{03}", "f_{03}", "f_{01}+f_{13}", "f_{02}+f_{23}", "f_{03}"],
    ["f^Mod_{12}", "f_{01}+f_{02}", "f_{12}", "f_{12}", "f_{13}+f_{23}"],
    ["f^Mod_{13}", "f_{01}+f_{03}", "f_{13}", "f_{12}+f_{23}", "f_{13}"],
    ["f^Mod_{23}", "f_{02}+f_{03}", "f_{12}+f_{13}", "f_{23}", "f_{23}"],
]


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title} ({self.seconds:.2f}s) {self.detail}".rstrip()

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "failures": self.failures[:20],
        }


def _table_diff(got, want) -> list:
    out = []
    for r, (g, w) in enumerate(zip(got, want)):
        for c, (a, b) in enumerate(zip(g, w)):
            if a != b:
                out.append({"row": w[0], "column": f"Y_{c - 1}", "emitted": a, "printed": b})
    if len(got) != len(want):
        out.append({"rows_emitted": len(got), "rows_printed": len(want)})
    return out


def check_1(seed: int = 0) -> CheckResult:
    diff = _table_diff(trivializer_table(3, 1), TRIVIALIZER_TABLE)
    return CheckResult(1, "trivializer table, k=1, n=3", not diff, f"{len(diff)} differing cells", failures=diff)


def check_2(seed: int = 0) -> CheckResult:
    diff = _table_diff(modification_table(3, 1), MODIFICATION_TABLE)
    return CheckResult(2, "modification table, k=1, n=3", not diff, f"{len(diff)} differing cells", failures=diff)


def _size_tuples(values, lengths):
    for L in lengths:
        yield from itertools.product(values, repeat=L)


def check_3(seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    fails, count = [], 0
    for sizes in _size_tuples((2, 3), (2, 3, 4)):
        grid = Grid(FiniteModel(sizes))
        n = len(sizes) - 1
        for k in range(n):
            for _ in range(3):
                f = grid.random_cochain(rng, k)
                dd = grid.d(grid.d(f))
                count += 1
                bad = [A for A, v in dd.items() if v.any()]
                if bad:
                    fails.append({"sizes": sizes, "degree": k, "key": bad[0]})
    return CheckResult(3, "d(d f) = 0 on finite models", not fails and count >= 100, f"{count} cochains, {len(fails)} failures", failures=fails)


def check_4(seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    fails, count = [], 0
    for sizes in _size_tuples((2, 3), (2, 3, 4)):
        grid = Grid(FiniteModel(sizes))
        n = len(sizes) - 1
        for k in range(1, n + 1):
            for _ in range(2):
                f = random_cocycle(grid, rng, k)
                g = grid.trivialize(f, grid.random_pieces(rng))
                count += 1
                diff = grid.first_difference(grid.d(g), f)
                if diff:
                    fails.append({"sizes": sizes, "degree": k, "key": diff[0], "point": str(diff[1])})
    return CheckResult(4, "d(trivialize f) = f for cocycles", not fails and count >= 100, f"{count} cocycles, {len(fails)} failures", failures=fails)


def _random_point_on_facet(rng: random.Random, A, length: int, uncountable: set):
    vals = []
    for i in range(length):
        if i not in A:
            vals.append(INF)
        elif i in uncountable and rng.random() < 0.4:
            vals.append(rng.choice([OMEGA, add_finite(OMEGA, rng.randrange(1, 9)), from_terms([(1, 2), (0, 3)]), from_terms([(2, 1)])]))
        else:
            vals.append(rng.randrange(0, 12))
    return tuple(vals)


def random_dsl_node(rng: random.Random, arity: int, depth: int = 2) -> fx.Node:
    """A random expression that is continuous on every face (no isinf/even atoms)."""
    if depth == 0 or rng.random() < 0.35:
        i = rng.randrange(arity)
        kind = rng.randrange(5)
        if kind == 0:
            return fx.CoordLess(i, rng.choice([1, 2, 4, 7, OMEGA, add_finite(OMEGA, 2)]))
        if kind == 1:
            return fx.CoordIn(i, frozenset(rng.sample(range(10), rng.randrange(1, 4))))
        if kind == 2:
            return fx.Delta(frozenset(rng.sample(range(6), 2)))
        if kind == 3:
            return fx.Delta(frozenset([rng.randrange(6)]), tuple(sorted(rng.sample(range(arity), 2))))
        return fx.Const(rng.randrange(2))
    kids = [random_dsl_node(rng, arity, depth - 1) for _ in range(rng.randrange(2, 4))]
    op = rng.randrange(3)
    if op == 0:
        return fx.xor(*kids)
    if op == 1:
        return fx.conj(*kids)
    return fx.neg(kids[0])


def random_dsl_cochain(rng: random.Random, n: int, k: int) -> Cochain:
    return cochain(n, k, {A: random_dsl_node(rng, n + 1) for A in index_sets(n, k + 1)})


def check_5(seed: int = 0) -> CheckResult:
    nrng = np.random.default_rng(seed)
    fails, count = [], 0
    for sizes in _size_tuples((2, 3), (3, 4)):
        grid = Grid(FiniteModel(sizes))
        n = len(sizes) - 1
        for k in range(n):
            for _ in range(2):
                f = grid.random_cochain(nrng, k)
                dm = grid.d(grid.modify(f, grid.random_pieces(nrng)))
                count += 1
                bad = [A for A, v in dm.items() if v.any()]
                if bad:
                    fails.append({"identity": "d(modify f) = 0", "sizes": sizes, "key": bad[0]})
    # DSL side: with kappa_(n-k) = aleph_0 and the min rule, f^Mod keeps f on F_A
    rng = random.Random(seed)
    kappa, k = (0, 0, 0, 1), 1
    n = len(kappa) - 1
    unc = {i for i, m in enumerate(kappa) if m > 0}
    p = MinRule()
    limit_points = cocycle_checks = 0
    while limit_points < 500:
        f = random_dsl_cochain(rng, n, k)
        fm = modify(f, p)
        if cocycle_checks < 25:
            cocycle_checks += 1
            v = is_cocycle(fm, "bounded", 3)
            if not v.holds:
                fails.append({"identity": "modify is a cocycle", "key": v.key, "point": str(v.witness)})
        for A in index_sets(n, k + 1):
            for _ in range(4):
                x = _random_point_on_facet(rng, A, n + 1, unc)
                limit_points += 1
                if fm[A](x) != f[A](x):
                    fails.append({"identity": "limit value kept", "key": A, "point": str(x)})
    return CheckResult(
        5,
        "modification: cocycle and limit values",
        not fails and count >= 100,
        f"{count} finite cochains, {limit_points} limit points, {len(fails)} failures",
        failures=fails,
    )


def check_6(seed: int = 0) -> CheckResult:
    fails = []
    cases = 0
    for sizes in list(_size_tuples((2, 3), (1, 2, 3))) + [(2, 2, 2)]:
        b = betti(FiniteModel(sizes))
        want = [int(np.prod(sizes))] + [0] * (len(sizes) - 1)
        cases += 1
        if b != want:
            fails.append({"sizes": sizes, "betti": b, "expected": want})
    for sizes in _size_tuples((2, 3, 4), (1, 2, 3)):
        got = top_quotient_dim(sizes)
        want = int(np.prod([m - 1 for m in sizes]))
        cases += 1
        if got != want:
            fails.append({"sizes": sizes, "top_quotient": got, "expected": want})
    return CheckResult(6, "finite-model Betti numbers and top quotients", not fails, f"{cases} cases, {len(fails)} failures", failures=fails)


def example_cochain() -> Cochain:
    return cochain(2, 1, {"01": fx.ONE, "02": fx.ONE})


def check_7(seed: int = 0) -> CheckResult:
    f = example_cochain()
    lam, kappa = (0, 0, 0), (0, 0, 1)
    naive = Cochain(2, 1, {A: fx.naive_extend(e, lam, kappa) for A, e in f.entries.items()})
    v1 = is_cocycle(naive)
    v2 = is_cocycle(embed(f, lam, kappa, MinRule()))
    ok = (not v1.holds) and v1.witness is not None and v2.holds
    detail = f"naive: witness {v1.witness} on {v1.key}; embedded: {v2.tag}"
    return CheckResult(7, "naive extension fails, embedding passes", ok, detail)


_Q_VALUES = [0, 1, 2, 5, OMEGA, add_finite(OMEGA, 1), from_terms([(1, 2)]), from_terms([(2, 1), (0, 3)])]


def check_8(seed: int = 0) -> CheckResult:
    fails, checked, pairs = [], 0, 0
    for length in (3, 4):
        n = length - 1
        for idx in itertools.combinations_with_replacement(range(4), length):
            for k in range(1, n):
                if not rule_d(KappaTuple(idx), k, EMPTY):
                    continue
                f = wt.main1_cocycle(KappaTuple(idx), k)
                v = is_cocycle(f, "bounded", 3)
                checked += 1
                if not v.holds:
                    fails.append({"kappa": idx, "k": k, "key": v.key, "point": str(v.witness)})
        for k in range(1, n):
            f = wt.main1_cocycle(length, k)
            for A in index_sets(n, k + 1):
                if not wt.kterminal(A, n, k):
                    continue
                for y1, y2 in itertools.product(itertools.product(_Q_VALUES, repeat=k), repeat=2):
                    if y1[0] == y2[0]:
                        continue
                    pairs += 1
                    if not wt.slice_distinct(f, A, y1, y2).distinct:
                        fails.append({"n": n, "k": k, "A": A, "y1": str(y1), "y2": str(y2)})
    return CheckResult(8, "diagonal cocycle and slice distinctness", not fails, f"{checked} cocycle checks, {pairs} slice pairs, {len(fails)} failures", failures=fails)


def check_9(seed: int = 0) -> CheckResult:
    fails = []
    rng = random.Random(seed)
    total = 0
    for z, k in ((1, 1), (1, 2), (2, 1)):
        B = wt.main3_axes(z, k)
        f = cocycle_from_phi(wt.main3_phi(z, k), B, wt.main3_decomposition(z, k))
        limit = face_restrict(f, B)
        if wt.pj_decide(limit, k, z):
            fails.append({"z": z, "k": k, "expected": False, "function": str(limit)})
        for _ in range(60):
            g = wt.random_fragment_coboundary(rng, z, k)
            total += 1
            if not wt.pj_decide(g, k, z):
                fails.append({"z": z, "k": k, "expected": True, "function": str(g)})
    return CheckResult(9, "P_j engine", not fails, f"{total} random coboundaries, {len(fails)} failures", failures=fails)


def check_10(seed: int = 0) -> CheckResult:
    fails = []
    for n in range(2, 5):
        for k in range(1, n):
            kap = KappaTuple((0,) * (n - k + 1) + (1,) * k)
            v = status(kap, k)
            if v.verdict != NONZERO:
                fails.append({"case": "reference", "kappa": str(kap), "k": k, "got": v.verdict})
    for n in range(1, 5):
        for idx in itertools.combinations_with_replacement(range(n + 2), n + 1):
            if any(m < i for i, m in enumerate(idx)):
                v = status(KappaTuple(idx), n)
                if v.verdict != ZERO:
                    fails.append({"case": "top-vanishing", "kappa": idx, "got": v.verdict})
    for n in range(1, 4):
        kap = KappaTuple(tuple(range(n + 2)))
        v = status(kap, n)
        if v.verdict != NONZERO:
            fails.append({"case": "increasing", "kappa": str(kap), "k": n, "got": v.verdict})
    for fxt in fixtures():
        v = status(fxt.kappa, fxt.k)
        if v.verdict != UNKNOWN:
            fails.append({"case": "open fixture", "kappa": str(fxt.kappa), "k": fxt.k, "got": v.verdict, "rule": v.rule})
        if fxt.assumptions:
            v2 = status(fxt.kappa, fxt.k, AssumptionSet.parse(fxt.assumptions))
            if v2.verdict != fxt.expected_with_assumptions:
                fails.append({"case": "fixture with assumption", "kappa": str(fxt.kappa), "got": v2.verdict})
    scan = soundness_scan()
    for c in scan.conflicts:
        fails.append({"case": "soundness", "conflict": str(c)})
    for c in scan.rule_f_violations:
        fails.append({"case": "rule f", "violation": str(c)})
    return CheckResult(10, "status engine", not fails, f"{scan.scanned} scanned, {len(fails)} failures", failures=fails)


def constructor_corpus(rng: random.Random, kind: str, n: int):
    """A random (function, domain) pair built around one constructor."""
    arity = n + 1
    A = tuple(sorted(rng.sample(range(arity), rng.randrange(0, n + 1))))
    i = rng.randrange(arity)
    if kind == "const":
        node = fx.Const(rng.randrange(2))
    elif kind == "less":
        node = fx.CoordLess(i, rng.choice([0, 3, 6, OMEGA, add_finite(OMEGA, 3), from_terms([(2, 1)])]))
    elif kind == "in":
        node = fx.CoordIn(i, frozenset(rng.sample([0, 1, 3, 5, OMEGA], 2)))
    elif kind in ("isinf", "even"):
        A = tuple(sorted(set(A) | {i}))
        if len(A) == arity:
            A = tuple(a for a in A if a != (i + 1) % arity)
        node = fx.CoordIsInf(i) if kind == "isinf" else fx.CoordEven(i)
    elif kind == "delta":
        node = fx.Delta(frozenset(rng.sample(range(5), 2)))
    elif kind == "delta-on":
        node = fx.Delta(frozenset([rng.randrange(4)]), tuple(sorted(rng.sample(range(arity), 2))))
    elif kind == "sigma":
        src = rng.randrange(arity)
        A = tuple(sorted(set(A) | {src}))
        if len(A) == arity:
            A = (src,)
        axes = tuple(a for a in range(arity) if a != src)
        node = fx.SigmaDelta(src, axes)
    elif kind == "belowmin":
        z = n
        node = fx.BelowMin(z, tuple(range(z)), OMEGA)
        A = tuple(sorted(set(A) | {z}))
        if len(A) == arity:
            A = (z,)
    elif kind in ("xor", "and", "not"):
        kids = [random_dsl_node(rng, arity, 1) for _ in range(2)]
        node = {"xor": fx.Xor(tuple(kids)), "and": fx.And(tuple(kids)), "not": fx.Not(kids[0])}[kind]
    elif kind == "pin":
        j = rng.randrange(arity)
        node = fx.PinCoord(j, rng.choice([0, 2, OMEGA, INF]), random_dsl_node(rng, arity, 1))
    elif kind == "pinlarge":
        ts = tuple(OMEGA if rng.random() < 0.5 else None for _ in range(arity))
        node = fx.PinLargeToInf(ts, random_dsl_node(rng, arity, 1))
    elif kind == "piecewise-min":
        node = fx.Piecewise(MinRule(), tuple(random_dsl_node(rng, arity, 1) for _ in range(arity)))
    elif kind == "piecewise-vmin":
        A = tuple(sorted(rng.sample(range(arity), n)))
        node = fx.Piecewise(VminRule(), tuple(random_dsl_node(rng, arity, 1) for _ in range(arity)))
    else:
        raise ValueError(kind)
    if len(A) == arity:
        A = A[:-1]
    return fx.fn(node, A, arity)


CONSTRUCTORS = (
    "const", "less", "in", "isinf", "even", "delta", "delta-on", "sigma", "belowmin",
    "xor", "and", "not", "pin", "pinlarge", "piecewise-min", "piecewise-vmin",
)


def _limit_point(rng: random.Random, f: fx.FnExpr, natural_only: bool):
    arity = f.arity
    while True:
        x = []
        for i in range(arity):
            if i not in f.domain and rng.random() < 0.5:
                x.append(INF)
            elif natural_only or rng.random() < 0.8:
                x.append(rng.randrange(0, 8))
            else:
                x.append(rng.choice([OMEGA, add_finite(OMEGA, 2), from_terms([(2, 1)])]))
        if any(v is INF for v in x) and not all(v is INF for v in x):
            return tuple(x)


def check_11(seed: int = 0, pairs_per_constructor: int = 200, samples: int = 12) -> CheckResult:
    rng = random.Random(seed)
    fails, pairs = [], 0
    for kind in CONSTRUCTORS:
        done = 0
        while done < pairs_per_constructor:
            n = rng.choice([1, 2, 3])
            f = constructor_corpus(rng, kind, n)
            x = _limit_point(rng, f, natural_only=kind == "piecewise-vmin")
            if kind == "piecewise-vmin" and sum(v is INF for v in x) != 1:
                continue
            w = fx.continuity_witness(f, x)
            N = w.neighborhood(x)
            base = f(x)
            for y in sample_neighborhood(N, rng.randrange(1 << 30), samples):
                if not in_DA(y, f.domain):
                    continue
                if f(y) != base:
                    fails.append({"constructor": kind, "function": str(f), "point": str(x), "neighbor": str(y)})
                    break
            done += 1
            pairs += 1
    return CheckResult(11, "continuity witnesses", not fails, f"{pairs} (function, point) pairs, {len(fails)} failures", failures=fails)


def check_12(seed: int = 0) -> CheckResult:
    fails = []
    cases = 0
    rules = (MinRule(), VminRule())
    for p in rules:
        for j in (0, 1):
            for v in range(0, 30):
                prof = condition3_profile(p, j, (v,), [50, 100, 200])
                cases += 1
                if not stabilizes(prof):
                    fails.append({"rule": p.name, "n": 1, "j": j, "xr": v, "profile": prof})
    rng = random.Random(seed)
    for p in rules:
        for _ in range(50):
            j = rng.randrange(3)
            xr = (rng.randrange(0, 60), rng.randrange(0, 60))
            prof = _profile_fast(p, j, xr, [1000, 5000, 10000])
            cases += 1
            if not stabilizes(prof):
                fails.append({"rule": p.name, "n": 2, "j": j, "xr": xr, "profile": prof})
    return CheckResult(12, "condition (3) counts stabilize", not fails, f"{cases} fibers, {len(fails)} failures", failures=fails)


def _profile_fast(p, j, xr, bounds):
    """One pass over 0..max(bounds)-1 recording the running count at each bound."""
    marks = sorted(bounds)
    out, count, t = [], 0, 0
    for v in range(marks[-1]):
        while t < len(marks) and v == marks[t]:
            out.append(count)
            t += 1
        x = xr[:j] + (v,) + xr[j:]
        if p.assign(x) == j:
            count += 1
    while t < len(marks):
        out.append(count)
        t += 1
    return out


CHECKS: dict[int, Callable[..., CheckResult]] = {
    1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6,
    7: check_7, 8: check_8, 9: check_9, 10: check_10, 11: check_11, 12: check_12,
}


def run_check(number: int, seed: int = 0) -> CheckResult:
    t = time.perf_counter()
    res = CHECKS[number](seed)
    res.seconds = time.perf_counter() - t
    return res


def run_all(seed: int = 0) -> list[CheckResult]:
    return [run_check(i, seed) for i in sorted(CHECKS)]
