"""Command-line front end.

Exit codes: 0 success or pass, 1 verified mismatch, 2 usage error,
3 unstabilized construction or internal assertion.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Dict, List, Optional, Sequence

from . import __version__
from .affine_demazure import (
    AffineError,
    build_affine_data,
    check_idempotent,
    check_word_independence,
    coroot_evaluation_table,
    graded_demazure,
)
from .envelope import (
    envelope_for,
    garland_cases,
    identity_battery,
    psi_checks,
    psi_lambda_checks,
    sample_hyperdegree_pairs,
    verify_hyperdegree,
    verify_lambda_relation,
)
from .folding import FoldingError, fold, verify_commutator_table
from .modules import (
    ModuleError,
    UnstabilizedError,
    build_demazure,
    build_weyl,
    graded_character,
    integral_lattice,
    restrict_untwisted,
    verify_restriction,
    verify_wd,
)
from .rootdata import RootDataError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _parse_lambda(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"lambda must be comma-separated integers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistweyl", description="Twisted current algebras, Weyl and Demazure modules.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, lam=True, level=False):
        sp.add_argument("--type", required=True, help="ambient Cartan type, e.g. A3, D4, E6")
        sp.add_argument("--aut", default="id", help="id, order2, order3, or a node permutation like 2,1,0")
        if lam:
            sp.add_argument("--lambda", dest="lam", required=True, type=_parse_lambda, help="g0 fundamental-weight coordinates")
        if level:
            sp.add_argument("--level", type=int, default=1)
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")

    def cutoffs(sp):
        sp.add_argument("--bound", type=int, default=None, help="initial saturation bound (grade cutoff)")
        sp.add_argument("--max-increments", type=int, default=5)

    common(sub.add_parser("fold", help="folded algebra data"), lam=False)
    sp = sub.add_parser("identities", help="straightening identity battery")
    common(sp, lam=False)
    sp.add_argument("--cases", default=None, help="comma list from a,b,c-i,c-ii,c-iii,untwisted,hyperdegree,tLvsL,psi")
    sp.add_argument("--literal", action="store_true", help="use the formulas exactly as printed")
    sp.add_argument("--samples", type=int, default=50)
    for name in ("weyl", "restrict"):
        sp = sub.add_parser(name, help=f"build the {name} module")
        common(sp)
        cutoffs(sp)
    sp = sub.add_parser("demazure", help="build the Demazure module")
    common(sp, level=True)
    cutoffs(sp)
    common(sub.add_parser("affine-char", help="Demazure operator oracle"), level=True)
    sp = sub.add_parser("verify", help="verify a theorem instance")
    sp.add_argument("what", choices=["wd", "restriction"])
    common(sp)
    sp.add_argument("--strict", action="store_true", help="refuse types outside the theorem's list")
    sp = sub.add_parser("lattice", help="integral lattice elementary divisors")
    common(sp, level=True)
    sp.add_argument("--kind", choices=["weyl", "demazure"], default="weyl")
    sp.add_argument("--p", type=int, default=None, help="report the mod-p dimension")
    sp.add_argument("--monomial-bound", type=int, default=None)
    sp = sub.add_parser("affine-checks", help="Demazure operator properties and coroot table")
    common(sp, level=True)
    return p


def _job(args: argparse.Namespace) -> dict:
    job = {k: v for k, v in sorted(vars(args).items()) if k != "format"}
    job["schema_version"] = SCHEMA_VERSION
    return job


def _character_list(ch: Dict) -> List[dict]:
    return [{"weight": list(w), "grade": g, "mult": m} for (w, g), m in sorted(ch.items(), key=lambda kv: (kv[0][1], [-x for x in kv[0][0]]))]


def _fold(args) -> "FoldedAlgebra":
    try:
        return fold(args.type, args.aut)
    except (FoldingError, RootDataError, ValueError, KeyError) as e:
        raise UsageError(f"cannot fold {args.type} by {args.aut}: {e}") from e


def _run(args) -> tuple:
    """Returns (payload, exit code)."""
    cmd = args.command
    if cmd == "fold":
        fa = _fold(args)
        rep = verify_commutator_table(fa)
        return {"result": fa.summary(), "report": rep}, _code(rep)
    if cmd == "identities":
        fa = _fold(args)
        cases = args.cases.split(",") if args.cases else garland_cases(fa) + ["hyperdegree", "tLvsL", "psi"]
        rep: List[dict] = []
        for c in cases:
            if c in ("a", "b", "c-i", "c-ii", "c-iii", "untwisted"):
                if c not in garland_cases(fa):
                    raise UsageError(f"case {c} does not apply to {args.type} with {args.aut}; applicable: {garland_cases(fa)}")
                rep += identity_battery(fa, [c], literal=args.literal)
            elif c == "hyperdegree":
                env = envelope_for(fa, 6)
                rep += verify_hyperdegree(env, sample_hyperdegree_pairs(env, args.samples))
            elif c == "tLvsL":
                for mu in fa.R_eps(0):
                    rep += verify_lambda_relation(fa, mu, 4, literal=args.literal)
            elif c == "psi":
                rep += psi_checks(fa) + psi_lambda_checks(fa)
            else:
                raise UsageError(f"unknown identity case {c!r}")
        return {"result": {"checks": len(rep), "passed": sum(r["pass"] for r in rep)}, "report": rep}, _code(rep)
    if cmd in ("weyl", "demazure", "restrict"):
        fa = _fold(args)
        if cmd == "weyl":
            mod = build_weyl(fa, args.lam, bound=args.bound, max_increments=args.max_increments)
        elif cmd == "demazure":
            mod = build_demazure(fa, args.level, args.lam, bound=args.bound, max_increments=args.max_increments)
        else:
            mod = restrict_untwisted(fa, args.lam, max_increments=args.max_increments)
        ch = graded_character(mod)
        res = {"dim": mod.dim, "g0": fa.g0_label, "presentation": mod.presentation()}
        return {"dim": mod.dim, "result": res, "character": _character_list(ch), "report": mod.report}, _code(mod.report)
    if cmd == "affine-char":
        fa = _fold(args)
        try:
            ch = graded_demazure(fa, args.level, args.lam)
        except AffineError as e:
            raise UsageError(str(e)) from e
        return {"dim": sum(ch.values()), "result": {"dim": sum(ch.values()), "level": args.level}, "character": _character_list(ch)}, EXIT_OK
    if cmd == "affine-checks":
        fa = _fold(args)
        ard = build_affine_data(fa)
        rep = check_idempotent(ard)
        Lam = (tuple(1 for _ in range(ard.rank)), 0)
        rep += check_word_independence(ard, Lam)
        try:
            rep += coroot_evaluation_table(ard, args.level, args.lam)
        except AffineError as e:
            raise UsageError(str(e)) from e
        return {"result": {"cartan": [list(r) for r in ard.cartan], "marks": list(ard.marks), "comarks": list(ard.comarks)}, "report": rep}, _code(rep)
    if cmd == "verify":
        fa = _fold(args)
        if args.what == "wd":
            rep = verify_wd(fa, args.lam, strict=args.strict)
        else:
            rep = verify_restriction(fa, args.lam)
        return {"result": {"verdict": "pass" if _code(rep) == EXIT_OK else "mismatch"}, "report": rep}, _code(rep)
    if cmd == "lattice":
        fa = _fold(args)
        mod = build_weyl(fa, args.lam) if args.kind == "weyl" else build_demazure(fa, args.level, args.lam)
        lat = integral_lattice(mod, args.monomial_bound, p=args.p)
        blocks = [
            {"weight": list(w), "grade": g, "divisors": b["divisors"], "scale": b["scale"]}
            for (w, g), b in sorted(lat.blocks.items(), key=lambda kv: (kv[0][1], [-x for x in kv[0][0]]))
        ]
        res = {"dim": lat.dim, "rank": lat.rank, "divisors": lat.divisors, "blocks": blocks}
        if args.p is not None:
            res["mod_p_dim"] = lat.mod_p_dim(args.p)
        return {"dim": lat.dim, "result": res}, EXIT_OK
    raise UsageError(f"unknown command {cmd}")


def _code(rep: Sequence[dict]) -> int:
    return EXIT_OK if all(r["pass"] for r in rep) else EXIT_MISMATCH


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
        return
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        if "character" in payload:
            n = len(payload["character"][0]["weight"]) if payload["character"] else 0
            w.writerow([f"weight{i + 1}" for i in range(n)] + ["grade", "mult"])
            for row in payload["character"]:
                w.writerow(row["weight"] + [row["grade"], row["mult"]])
        elif "report" in payload:
            w.writerow(["check", "pass", "detail"])
            for r in payload["report"]:
                w.writerow([r["check"], r["pass"], r["detail"]])
        else:
            w.writerow(["key", "value"])
            for k, v in sorted(payload.get("result", {}).items()):
                w.writerow([k, json.dumps(v, default=str)])
        return
    res = payload.get("result", {})
    for k, v in sorted(res.items()):
        out.write(f"{k}: {v}\n")
    if "character" in payload:
        out.write(f"{'weight':<20}{'grade':>6}{'mult':>6}\n")
        for row in payload["character"]:
            out.write(f"{str(row['weight']):<20}{row['grade']:>6}{row['mult']:>6}\n")
    for r in payload.get("report", []):
        out.write(f"[{'PASS' if r['pass'] else 'FAIL'}] {r['check']}: {r['detail']}\n")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    job = _job(args)
    try:
        payload, code = _run(args)
    except (UsageError, ModuleError) as e:
        payload, code = {"result": {"status": "error", "reason": "usage", "message": str(e)}}, EXIT_USAGE
        print(f"error: {e}", file=sys.stderr)
    except UnstabilizedError as e:
        payload, code = {"result": {"status": "error", "reason": "unstabilized", "message": str(e)}}, EXIT_UNSTABLE
        print(f"error: {e}", file=sys.stderr)
    except AssertionError as e:
        payload, code = {"result": {"status": "error", "reason": "internal-assertion", "message": str(e)}}, EXIT_UNSTABLE
        print(f"error: {e}", file=sys.stderr)
    else:
        if code == EXIT_MISMATCH:
            payload["result"] = dict(payload.get("result", {}), reason="mismatch")
    payload["job"] = job
    _emit(payload, args.format, out)
    return code


def main_entry() -> None:
    sys.exit(main())
