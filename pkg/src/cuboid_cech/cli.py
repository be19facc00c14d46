"""``cuboid-cech`` command-line front end.

Exit codes: 0 success, 1 verification failure (a JSON report is printed),
2 usage error, 3 capacity guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import acceptance
from .cardinals import AssumptionSet, KappaTuple
from .cech import (
    Cochain,
    CochainError,
    coboundary,
    cochain_from_json,
    cochain_to_json,
    cocycle_from_phi,
    face_restrict,
    is_cocycle,
    parse_key,
)
from .fnexpr import ExprError, equiv_decide, fn, parse_sexpr, to_sexpr
from .fubini import (
    FubiniError,
    condition2_witness,
    condition3_profile,
    embed,
    fubini_exists,
    modify,
    trivialize,
)
from .oracle import CapacityError, betti, fuzz_identities, parse_sizes, top_quotient_dim
from .partitions import PartitionError, partition_by_name
from .space import PointError, format_point, parse_point, point_to_json
from .status import rule_d, status
from .witnesses import WitnessError, main1_cocycle, main3_axes, main3_decomposition, main3_phi, pj_decide

EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 1, 2, 3


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("reason", "verification failed"))
        self.report = report


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    bound: int = 3
    json: bool = False
    assumptions: AssumptionSet = AssumptionSet()


def _emit(cfg: RunConfig, payload: dict, table: str, out) -> None:
    if cfg.json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(table.rstrip() + "\n")


def _kappa(text: str) -> KappaTuple:
    try:
        return KappaTuple.parse(text)
    except ValueError as e:
        raise UsageError(f"bad --kappa {text!r}: {e}") from None


def _load_cochain(path: str) -> Cochain:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return cochain_from_json(text)
    except OSError as e:
        raise UsageError(str(e)) from None
    except (json.JSONDecodeError, CochainError) as e:
        raise UsageError(f"cannot read cochain from {path}: {e}") from None


def _write_cochain(f: Cochain, path: Optional[str], out) -> None:
    text = json.dumps(cochain_to_json(f), indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


# -- subcommands -----------------------------------------------------------------


def cmd_status(args, cfg, out):
    v = status(_kappa(args.kappa), args.k, cfg.assumptions)
    payload = {"schema": "cuboid-cech/status@1", "kappa": args.kappa, "k": args.k, **v.to_json()}
    lines = [f"verdict: {v.verdict}", f"rule:    ({v.rule}) {v.citation}"]
    if v.matched_open_question:
        lines.append(f"open question: {v.matched_open_question}")
    if v.detail:
        lines.append(f"detail:  {v.detail}")
    _emit(cfg, payload, "\n".join(lines), out)


def cmd_fubini(args, cfg, out):
    if args.action == "exists":
        if args.k is None:
            raise UsageError("fubini exists needs --k")
        v = fubini_exists(_kappa(args.kappa), args.k)
        payload = {"schema": "cuboid-cech/fubini@1", "kappa": args.kappa, "k": args.k, **v.to_json()}
        _emit(cfg, payload, f"exists: {v.exists}\nrule:   {v.rule}\n{v.citation}", out)
        return
    p = partition_by_name(args.rule)
    if not args.point:
        raise UsageError("fubini inspect needs --point")
    x = parse_point(args.point)
    piece = p.assign(x)
    payload = {"schema": "cuboid-cech/fubini-inspect@1", "rule": args.rule, "point": point_to_json(x), "piece": piece}
    lines = [f"point {format_point(x)} lies in piece Y_{piece}"]
    if args.facet is not None:
        A = parse_key(args.facet)
        N = condition2_witness(p, A, x)
        payload["neighborhood"] = {
            "facet": sorted(N.facet),
            "exceptions": {str(j): sorted(v) for j, v in sorted(N.exceptions.items())},
            "floors": {str(j): str(v) for j, v in sorted(N.floors.items())},
        }
        lines.append(f"condition (2) neighborhood: exceptions {payload['neighborhood']['exceptions']} floors {payload['neighborhood']['floors']}")
    if args.j is not None:
        xr = tuple(v for i, v in enumerate(x) if i != args.j)
        bounds = [10 ** e for e in range(1, args.max_exp + 1)]
        prof = condition3_profile(p, args.j, xr, bounds)
        payload["condition3"] = {"j": args.j, "bounds": bounds, "counts": prof}
        lines.append(f"condition (3) counts along axis {args.j}: {dict(zip(bounds, prof))}")
    _emit(cfg, payload, "\n".join(lines), out)


def cmd_betti(args, cfg, out):
    model = parse_sizes(args.sizes)
    b = betti(model)
    tq = top_quotient_dim(model.sizes)
    payload = {"schema": "cuboid-cech/betti@1", "sizes": list(model.sizes), "betti": b, "top_quotient": tq}
    table = "\n".join(f"H^{k}: dim {d}" for k, d in enumerate(b)) + f"\ntop quotient: dim {tq}"
    _emit(cfg, payload, table, out)


def cmd_fuzz(args, cfg, out):
    sizes = parse_sizes(args.sizes).sizes
    rep = fuzz_identities(cfg.seed, args.trials, sizes, args.partition)
    payload = rep.to_json()
    _emit(cfg, payload, f"{rep.checks} checks, {len(rep.failures)} failures, {len(rep.breaches)} precondition breaches", out)
    if not rep.ok:
        raise VerificationFailure({"reason": "finite-oracle identity failed", **payload})


def cmd_build(args, cfg, out):
    if args.family == "main1":
        if args.kappa is None:
            raise UsageError("main1 needs --kappa")
        kap = _kappa(args.kappa)
        if not (0 < args.k < kap.n and rule_d(kap, args.k, cfg.assumptions)) and not args.force:
            raise UsageError(f"({kap}, k={args.k}) does not meet the diagonal-cocycle hypothesis; pass --force to build anyway")
        f = main1_cocycle(kap, args.k)
    else:
        if args.z is None:
            raise UsageError("main3 needs --z")
        f = cocycle_from_phi(main3_phi(args.z, args.k), main3_axes(args.z, args.k), main3_decomposition(args.z, args.k), cfg.bound)
    _write_cochain(f, args.out, out)


def _verify_equal(lhs: Cochain, rhs: Cochain, bound: int) -> Optional[dict]:
    for A in lhs.keys():
        v = equiv_decide(lhs[A], rhs[A], bound)
        if v.kind == "not_equal":
            return {"key": "".join(map(str, A)), "point": point_to_json(v.witness)}
    return None


def cmd_trivialize(args, cfg, out):
    f = _load_cochain(args.input)
    p = partition_by_name(args.rule)
    if args.verify_bound is not None:
        v = is_cocycle(f, "bounded", args.verify_bound)
        if not v.holds:
            raise VerificationFailure({"reason": "input is not a cocycle", **v.to_json()})
    g = trivialize(f, p)
    if args.verify_bound is not None:
        bad = _verify_equal(coboundary(g), f, args.verify_bound)
        report = {"schema": "cuboid-cech/trivialize-report@1", "bound": args.verify_bound, "passed": bad is None}
        if bad:
            raise VerificationFailure({"reason": "d g differs from f", **report, "witness": bad})
        sys.stderr.write(json.dumps(report, sort_keys=True) + "\n")
    _write_cochain(g, args.out, out)


def cmd_modify(args, cfg, out):
    f = _load_cochain(args.input)
    p = partition_by_name(args.rule)
    if args.embed_from:
        lam = _kappa(args.embed_from).indices
        kap = _kappa(args.kappa).indices if args.kappa else None
        if kap is None:
            raise UsageError("--embed-from needs --kappa")
        g = embed(f, lam, kap, p)
    else:
        g = modify(f, p)
    if args.verify_bound is not None:
        v = is_cocycle(g, "bounded", args.verify_bound)
        if not v.holds:
            raise VerificationFailure({"reason": "modified cochain is not a cocycle", **v.to_json()})
    _write_cochain(g, args.out, out)


def cmd_restrict(args, cfg, out):
    f = _load_cochain(args.input)
    B = parse_key(args.face)
    r = face_restrict(f, B)
    payload = {
        "schema": "cuboid-cech/restriction@1",
        "face": args.face,
        "domain": sorted(r.domain),
        "arity": r.arity,
        "expr": to_sexpr(r.node),
    }
    _emit(cfg, payload, payload["expr"], out)


def cmd_pj(args, cfg, out):
    if args.input:
        f = face_restrict(_load_cochain(args.input), parse_key(args.face))
    else:
        if not args.expr or args.arity is None or args.domain is None:
            raise UsageError("pj needs --in/--face or --expr/--arity/--domain")
        f = fn(parse_sexpr(args.expr), parse_key(args.domain), args.arity)
    ok = pj_decide(f, args.j, args.z)
    payload = {"schema": "cuboid-cech/pj@1", "j": args.j, "z": args.z, "holds": ok}
    _emit(cfg, payload, f"P_{args.j}: {'holds' if ok else 'fails'}", out)


def cmd_verify(args, cfg, out):
    if args.suite == "all":
        numbers = sorted(acceptance.CHECKS)
    else:
        try:
            numbers = [int(t) for t in args.suite.split(",")]
        except ValueError:
            raise UsageError(f"suite must be 'all' or a comma list of criterion numbers, got {args.suite!r}") from None
        unknown = [n for n in numbers if n not in acceptance.CHECKS]
        if unknown:
            raise UsageError(f"no acceptance criterion numbered {unknown}")
    results = [acceptance.run_check(n, cfg.seed) for n in numbers]
    payload = {
        "schema": "cuboid-cech/verify-report@1",
        "seed": cfg.seed,
        "results": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }
    if not cfg.json:
        for r in results:
            out.write(r.line() + "\n")
    if not payload["passed"]:
        raise VerificationFailure(payload)
    if cfg.json:
        _emit(cfg, payload, "", out)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="enumeration bound (default 3)")
    common.add_argument("--assume", action="append", default=argparse.SUPPRESS, metavar="'2^aleph(a) >= aleph(b)'")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")

    ap = argparse.ArgumentParser(prog="cuboid-cech", description="Cech cohomology of punctured cuboids over Z/2.", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("status", parents=[common], help="decide vanishing of H^k")
    s.add_argument("--kappa", required=True, help="aleph indices, e.g. 0,1,2")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_status)

    s = sub.add_parser("fubini", parents=[common], help="Fubini partitions")
    s.add_argument("action", choices=["exists", "inspect"])
    s.add_argument("--kappa", default="0")
    s.add_argument("--k", type=int)
    s.add_argument("--rule", default="min", choices=["min", "vmin"])
    s.add_argument("--point")
    s.add_argument("--facet", help="index set A for a condition (2) neighborhood, e.g. 01")
    s.add_argument("--j", type=int, help="axis for condition (3) counts")
    s.add_argument("--max-exp", type=int, default=4)
    s.set_defaults(func=cmd_fubini)

    s = sub.add_parser("betti", parents=[common], help="finite-model cohomology dimensions")
    s.add_argument("--sizes", required=True, help="axis sizes, e.g. 2,3,2")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("fuzz", parents=[common], help="fuzz the cochain identities on a finite model")
    s.add_argument("--sizes", default="2,2,2")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--partition", choices=["random", "min"], default="random")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("build-cocycle", parents=[common], help="emit a witness cocycle as JSON")
    s.add_argument("family", choices=["main1", "main3"])
    s.add_argument("--kappa")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--z", type=int)
    s.add_argument("--force", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_build)

    for name, func, helptext in (
        ("trivialize", cmd_trivialize, "trivialize a cocycle along a Fubini partition"),
        ("modify", cmd_modify, "turn a cochain into a cocycle"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--in", dest="input", required=True, help="cochain JSON file or '-'")
        s.add_argument("--rule", default="min", choices=["min", "vmin"])
        s.add_argument("--verify-bound", type=int)
        s.add_argument("--out")
        if name == "modify":
            s.add_argument("--embed-from", help="aleph indices of the source cuboid")
            s.add_argument("--kappa", help="aleph indices of the target cuboid")
        s.set_defaults(func=func)

    s = sub.add_parser("restrict", parents=[common], help="face restriction of a cochain entry")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--face", required=True, help="index set B, e.g. 12")
    s.set_defaults(func=cmd_restrict)

    s = sub.add_parser("pj", parents=[common], help="decide property P_j of a top function")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--z", type=int)
    s.add_argument("--in", dest="input")
    s.add_argument("--face")
    s.add_argument("--expr")
    s.add_argument("--arity", type=int)
    s.add_argument("--domain")
    s.set_defaults(func=cmd_pj)

    s = sub.add_parser("verify", parents=[common], help="run acceptance criteria")
    s.add_argument("suite", help="'all' or a comma list such as 1,7")
    s.set_defaults(func=cmd_verify)
    return ap


def _config(args) -> RunConfig:
    try:
        ctx = AssumptionSet.parse(getattr(args, "assume", []))
    except ValueError as e:
        raise UsageError(str(e)) from None
    return RunConfig(getattr(args, "seed", 0), getattr(args, "bound", 3), getattr(args, "json", False), ctx)


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        args.func(args, cfg, out)
    except VerificationFailure as e:
        out.write(json.dumps(e.report, indent=2, sort_keys=True, default=str) + "\n")
        return EXIT_FAIL
    except CapacityError as e:
        sys.stderr.write(f"capacity: {e}\n")
        return EXIT_CAPACITY
    except (UsageError, ValueError, ExprError, CochainError, FubiniError, PartitionError, PointError, WitnessError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
