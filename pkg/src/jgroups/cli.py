"""Command line front end: ``jgroups verify|search|construct|demo``.

Exit codes: 0 success or structures found, 1 malformed input, 2 invalid
structure or rejected construction, 3 certified that no structure exists,
4 inconclusive (budget or bound hit).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from fractions import Fraction
from typing import Any

from . import __version__
from .constructions import (
    ModuleDescriptor,
    RealSubgroupDescriptor,
    ZCrossH,
    central_projection_structure,
    module_jgroup,
    real_projection,
    real_subgroup_jgroup,
    ring_times_module_structure,
    z_times_h,
)
from .exactnum import TruncatedPAdicInt, default_precision, parse_quadrat
from .expseq import ExponentSequence, SequenceRejected, pointwise_propagation_demo
from .groups import GroupError, parse_group_spec
from .jrings import (
    FunctionalJStructure,
    ProfiniteProductDescriptor,
    RingDescriptor,
    parse_padic_factors,
    parse_torsion,
    profinite_product,
    ring_to_jgroup,
)
from .jsearch import SearchOptions, search_coset
from .jstruct import JStructure, structure_from_dict, structure_group_ref, verify_axiom
from .nilpotent import LinearFunctional, nilpotent_jstructure, parse_elementary

SCHEMA = "jgroups-report/1"

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INVALID = 2
EXIT_NONE = 3
EXIT_INCONCLUSIVE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def parse_budget(text: str) -> float:
    m = re.fullmatch(r"\s*([0-9]*\.?[0-9]+)\s*(ms|s|m|h)?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}; use e.g. 60s, 500ms, 2m")
    scale = {"ms": 1e-3, "s": 1.0, "m": 60.0, "h": 3600.0}[m.group(2) or "s"]
    value = float(m.group(1)) * scale
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _jsonable(x: Any) -> Any:
    if isinstance(x, TruncatedPAdicInt):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def _functional_payload(s: FunctionalJStructure, report, formula: str) -> dict:
    return {
        "structure": {"kind": "functional", "name": s.name, "witness": _jsonable(s.witness), "formula": formula},
        "verification": report.to_dict(),
    }


def _finite_payload(s: JStructure) -> dict:
    return {"structure": s.to_dict(), "verification": verify_axiom(s).to_dict()}


# -- commands ---------------------------------------------------------------

def cmd_verify(args) -> tuple[int, dict]:
    try:
        with open(args.file) as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "payload" in data:
            structures = _structures_from_report(data["payload"])
        else:
            structures = [structure_from_dict(data)]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return EXIT_MALFORMED, {"error": f"malformed input: {exc}"}
    results = []
    for s in structures:
        report = verify_axiom(s)
        results.append({"witness": s.witness, "variant": s.variant, **report.to_dict()})
    ok = all(r["valid"] for r in results)
    return (EXIT_OK if ok else EXIT_INVALID), {"group": structures[0].group.name if structures else None,
                                               "results": results, "valid": ok}


def _structures_from_report(payload: dict) -> list[JStructure]:
    if "structure" in payload and payload["structure"].get("kind") != "functional":
        return [structure_from_dict(payload["structure"])]
    out = []
    group = payload["group"]
    for item in payload.get("structures", []):
        out.append(structure_from_dict({"group": group, **item}))
    if not out:
        raise ValueError("report holds no finite structures")
    return out


def cmd_search(args) -> tuple[int, dict]:
    try:
        G = parse_group_spec(args.group)
        opts = SearchOptions(
            variant=args.variant,
            witness_filter="all" if args.no_prune else "centralizer-pruned",
            enumeration_order=args.order,
            time_budget=args.budget,
            deadline=args.started + args.budget,
            max_results=args.max_results,
            workers=args.workers,
        )
    except (GroupError, ValueError, OSError) as exc:
        return EXIT_MALFORMED, {"error": str(exc)}
    try:
        outcome = search_coset(G, opts)
    except ValueError as exc:
        return EXIT_INCONCLUSIVE, {"error": str(exc)}
    payload = {
        "group": structure_group_ref(G),
        "order": G.order,
        "variant": args.variant,
        **outcome.to_dict(),
    }
    for item in payload["structures"]:
        item["variant"] = args.variant
    payload["central_witnesses"] = sorted({s.witness for s in outcome.structures if G.is_central(s.witness)})
    if outcome.structures:
        code = EXIT_OK
    elif outcome.exhaustive:
        code = EXIT_NONE
    else:
        code = EXIT_INCONCLUSIVE
    return code, payload


def _construct_ring(args, rng):
    if args.mod is not None:
        R = RingDescriptor.mod(args.mod)
    elif args.rational:
        R = RingDescriptor.rational()
    else:
        R = RingDescriptor.integers()
    s = ring_to_jgroup(R)
    if isinstance(s, JStructure):
        return _finite_payload(s)
    return _functional_payload(s, s.verify_samples(args.samples, rng), "x(x-1)/2")


def _construct_padic(args, rng):
    s = ring_to_jgroup(RingDescriptor.padic(args.p, args.precision))
    payload = _functional_payload(s, s.verify_samples(args.samples, rng), "x(x-1)/2")
    payload["output_precision"] = args.precision - 1 if args.p == 2 else args.precision
    return payload


def _construct_profinite(args, rng):
    if args.torsion and args.padic:
        raise ValueError("give either --torsion or --padic, not both")
    if args.torsion:
        d = ProfiniteProductDescriptor(torsion=parse_torsion(args.torsion))
    elif args.padic:
        d = ProfiniteProductDescriptor(padic=parse_padic_factors(args.padic), truncation=args.precision)
    else:
        raise ValueError("profinite needs --torsion or --padic")
    s = profinite_product(d)
    if isinstance(s, JStructure):
        return _finite_payload(s)
    return _functional_payload(s, s.verify_samples(args.samples, rng), "componentwise x(x-1)/2")


def _construct_ztimesh(args, rng):
    H = parse_group_spec(args.h)
    s, report = z_times_h(H, args.window)
    ops = ZCrossH(H)
    agree = all(
        central_projection_structure(ops, s.witness, lambda y: y[0], (k, u)) == s((k, u))
        for k in range(-args.window, args.window + 1)
        for u in range(H.order)
    )
    return {
        "structure": {"kind": "functional", "name": f"Z x {H.name}", "witness": list(s.witness),
                      "formula": "(k(k-1)/2, u^k)"},
        "verification": report.to_dict(),
        "agrees_with_central_projection": agree,
    }


def _construct_realsub(args, rng):
    d = RealSubgroupDescriptor(witness=parse_quadrat(args.witness), alpha=parse_quadrat(args.alpha))
    s = real_subgroup_jgroup(d)
    pts = [d.random_element(rng) for _ in range(args.samples)]
    report = s.verify_points(pts, f"{args.samples} random elements of Z + Z*sqrt2")
    shift_failures = [x for x in pts if real_projection(d, x + d.witness) != real_projection(d, x) + 1]
    return {
        "structure": {"kind": "functional", "name": s.name, "witness": d.witness.to_json(),
                      "alpha": d.alpha.to_json(), "formula": "P(x)(x - P(x)w) + binom(P(x),2) w"},
        "verification": report.to_dict(),
        "projection_shift_failures": [str(x) for x in shift_failures],
    }


def _ring_from_name(name: str) -> RingDescriptor:
    name = name.strip()
    if name in ("Q", "rational"):
        return RingDescriptor.rational()
    if name in ("Z", "integers"):
        return RingDescriptor.integers()
    m = re.fullmatch(r"(?:Z/|mod:)(\d+)", name)
    if m:
        return RingDescriptor.mod(int(m.group(1)))
    raise ValueError(f"unknown ring {name!r}; use Q, Z or Z/m")


def _construct_module(args, rng):
    R = _ring_from_name(args.ring)
    if args.times_ring:
        s = ring_times_module_structure(R, args.rank)
        if isinstance(s, JStructure):
            return _finite_payload(s)
        return _functional_payload(s, s.verify_samples(args.samples, rng), "(f_R(r), r v)")
    m = ModuleDescriptor.coordinate(R, args.rank, args.proj)
    s = module_jgroup(m)
    return _functional_payload(s, s.verify_samples(args.samples, rng), "P(x)(x - P(x)w) + f_R(P(x)) w")


def _construct_nilpotent(args, rng):
    n = args.dim
    w = parse_elementary(args.witness or f"E1{n}", n)
    P = LinearFunctional.from_name(args.proj or f"E1{n}", n)
    s = nilpotent_jstructure(n, w, P)
    report = s.verify_samples(args.samples, rng)
    return {
        "structure": {"kind": "functional", "name": f"strictly upper triangular {n}x{n}, BCH product",
                      "witness": w.to_json(), "projection": {f"E{i}{j}": str(c) for (i, j), c in P.coefficients.items()},
                      "formula": "P(x)(x - P(x)w) + binom(P(x),2) w"},
        "verification": report.to_dict(),
    }


_BUILDERS = {
    "ring": _construct_ring,
    "padic": _construct_padic,
    "profinite": _construct_profinite,
    "ztimesh": _construct_ztimesh,
    "realsub": _construct_realsub,
    "module": _construct_module,
    "nilpotent": _construct_nilpotent,
}


def cmd_construct(args) -> tuple[int, dict]:
    rng = random.Random(args.seed)
    try:
        payload = _BUILDERS[args.builder](args, rng)
    except GroupError as exc:
        return EXIT_MALFORMED, {"error": str(exc)}
    except (ValueError, ArithmeticError) as exc:
        return EXIT_INVALID, {"error": str(exc), "reason": type(exc).__name__}
    valid = payload["verification"]["valid"] and payload.get("agrees_with_central_projection", True)
    valid = valid and not payload.get("projection_shift_failures")
    return (EXIT_OK if valid else EXIT_INVALID), payload


def cmd_demo(args) -> tuple[int, dict]:
    rng = random.Random(args.seed)
    try:
        s_seq = ExponentSequence.parse(args.sequence)
        if args.padic:
            p, _, prec = args.padic.partition(":")
            structure = ring_to_jgroup(RingDescriptor.padic(int(p), int(prec) if prec else args.precision))
        else:
            structure = ring_to_jgroup(RingDescriptor.mod(args.mod))
    except (ValueError, ArithmeticError) as exc:
        return EXIT_MALFORMED, {"error": str(exc)}
    try:
        report = pointwise_propagation_demo(structure, s_seq, args.samples, rng, args.target)
    except SequenceRejected as exc:
        return EXIT_INVALID, {"error": str(exc), "sequence": list(s_seq.terms)}
    return (EXIT_OK if report.all_passed else EXIT_INVALID), {"sequence": list(s_seq.terms), **report.to_dict()}


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="write the JSON report to PATH (stdout if no path)")
    common.add_argument("--seed", type=int, default=0, help="seed for all random sampling")
    common.add_argument("--precision", type=int, default=None, help="p-adic working precision")

    parser = _Parser(prog="jgroups", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="verify a structure file")
    p.add_argument("file")

    p = sub.add_parser("search", parents=[common], help="search a finite group for J-structures")
    p.add_argument("group", help="cyclic:N, dihedral:N, sym:N, unitri:N:P, meta:M:K:R, product:AxB, file:PATH")
    p.add_argument("--variant", default="J2", choices=["J1", "J2", "J3", "J4"])
    p.add_argument("--no-prune", action="store_true", help="skip the necessary-condition witness filter")
    p.add_argument("--order", default="canonical", choices=["canonical", "reversed"])
    p.add_argument("--budget", type=parse_budget, default=60.0,
                   help="wall-clock budget for the whole command, e.g. 60s or 500ms")
    p.add_argument("--max-results", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("construct", help="build a J-structure from a known construction")
    cons = p.add_subparsers(dest="builder", required=True, parser_class=_Parser)
    b = cons.add_parser("ring", parents=[common])
    g = b.add_mutually_exclusive_group()
    g.add_argument("--mod", type=int)
    g.add_argument("--integers", action="store_true")
    g.add_argument("--rational", action="store_true")
    b.add_argument("--samples", type=int, default=1000)
    b = cons.add_parser("padic", parents=[common])
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--samples", type=int, default=1000)
    b = cons.add_parser("profinite", parents=[common])
    b.add_argument("--torsion", help="p:i:m,... for (Z/p^i)^m factors")
    b.add_argument("--padic", help="p[:m],... for (Z_p)^m factors")
    b.add_argument("--samples", type=int, default=1000)
    b = cons.add_parser("ztimesh", parents=[common])
    b.add_argument("--h", required=True, help="group spec for H, e.g. S3 or dihedral:4")
    b.add_argument("--window", type=int, default=25)
    b = cons.add_parser("realsub", parents=[common])
    b.add_argument("--alpha", default="sqrt2/2")
    b.add_argument("--witness", default="1")
    b.add_argument("--samples", type=int, default=500)
    b = cons.add_parser("module", parents=[common])
    b.add_argument("--ring", default="Q")
    b.add_argument("--rank", type=int, default=2)
    b.add_argument("--proj", type=int, default=0)
    b.add_argument("--times-ring", action="store_true", help="use R x R^rank with f(r, v) = (f(r), r v)")
    b.add_argument("--samples", type=int, default=1000)
    b = cons.add_parser("nilpotent", parents=[common])
    b.add_argument("--dim", type=int, default=3)
    b.add_argument("--witness", default=None, help="central basis element, default E1n")
    b.add_argument("--proj", default=None, help="coordinate functional, default E1n")
    b.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("demo", help="demonstrations")
    demos = p.add_subparsers(dest="demo", required=True, parser_class=_Parser)
    b = demos.add_parser("expseq", parents=[common])
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--padic", help="P:PRECISION, e.g. 3:12")
    src.add_argument("--mod", type=int, help="finite ring Z/m")
    b.add_argument("--sequence", default="geometric:3")
    b.add_argument("--samples", type=int, default=100)
    b.add_argument("--target", type=int, default=None, help="valuation target")
    return parser


_COMMANDS = {"verify": cmd_verify, "search": cmd_search, "construct": cmd_construct, "demo": cmd_demo}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "started")}


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Parse argv and run the command; returns (exit code, report)."""
    t0 = time.perf_counter()
    started = time.time()
    try:
        args = build_parser().parse_args(argv)
        args.started = started
        if getattr(args, "precision", None) is None:
            args.precision = default_precision()
        code, payload = _COMMANDS[args.command](args)
        config = _config(args)
    except (UsageError, ValueError) as exc:
        code, payload, config = EXIT_MALFORMED, {"error": str(exc)}, {"argv": list(argv or [])}
        args = None
    report = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "config": config,
        "seed": config.get("seed"),
        "exit_code": code,
        "payload": payload,
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    report["_json"] = getattr(args, "json", None)
    return code, report


def dumps_report(report: dict) -> str:
    clean = {k: v for k, v in report.items() if not k.startswith("_")}
    return json.dumps(clean, sort_keys=True, indent=2, default=_jsonable)


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    target = report.get("_json")
    text = dumps_report(report)
    if target == "-":
        print(text)
    else:
        if target:
            with open(target, "w") as fh:
                fh.write(text + "\n")
        print(_summary(code, report["payload"]))
    return code


def _summary(code: int, payload: dict) -> str:
    if "error" in payload:
        return f"exit {code}: {payload['error']}"
    if "structure_count" in payload:
        return (f"exit {code}: {len(payload['structures'])} structures listed "
                f"({payload['structure_count']} total), exhaustive={payload['exhaustive']}, "
                f"{payload['witnesses_pruned']} witnesses pruned")
    if "verification" in payload:
        v = payload["verification"]
        checks = v.get("checks", v.get("checks_performed"))
        return f"exit {code}: valid={v['valid']} after {checks} checks"
    if "results" in payload:
        return f"exit {code}: valid={payload['valid']}"
    return f"exit {code}: all_passed={payload.get('all_passed')}"


if __name__ == "__main__":
    sys.exit(main())
