"""Command-line front end.

Every command builds one report object with the keys ``command``, ``params``,
``result``, ``witnesses`` and ``duration``.  JSON output is that object; text
output is rendered from it.  Everything except ``duration`` is deterministic.

Exit codes: 0 success or member, 1 checked-false, 2 usage or parse error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .checks import ANCHORS, DEFAULT_SEED, SUITES, run_suite
from .idealization import (in_int_idealization, parse_ideal_poly, parse_module_spec, ideal_eval,
                           ideal_horner, is_defined)
from .lattices import basis_int_k, basis_int_mod, conjecture_check_mod4
from .membership import CapExceeded, MultisetSpec, in_int, in_int_k, in_int_mod, in_int_multiset
from .parsing import ParseError, format_binomial, format_poly, parse_poly
from .ringext import (GenDualElem, GenDualPoly, RelationMismatch, component_multiset, eval_closed_dual,
                      eval_closed_rho_forms, eval_direct, format_elem, in_int_ext, mask_label)
from .torsion import (is_principal_slicewise, kempner_count, parse_ring_spec, poly_function_count,
                      vanishing_ideal, MAX_FUNCTION_COUNT_RING)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
MAX_BASIS_DEGREE = 64


class UsageError(Exception):
    pass


class InvariantViolation(Exception):
    pass


def _int_list(text: str) -> list[int]:
    t = text.strip()
    if t.startswith("[") and t.endswith("]"):
        t = t[1:-1]
    try:
        return [int(s) for s in t.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"expected a list of integers, got {text!r}") from None


def _param(value, flag_value, name):
    if value not in (None, ""):
        return value
    if flag_value is None:
        raise UsageError(f"{name} missing")
    return str(flag_value)


# member -------------------------------------------------------------------

def cmd_member(args) -> tuple[dict, dict, list, int]:
    kind, _, arg = args.target.partition(":")
    params = {"expr": args.expr, "target": args.target}
    if kind == "int":
        f = parse_poly(args.expr)
        v = in_int(f)
    elif kind == "int-k":
        k = int(_param(arg, args.k, "k"))
        params["k"] = k
        v = in_int_k(parse_poly(args.expr), k)
    elif kind == "int-mod":
        m = int(_param(arg, args.modulus, "modulus"))
        params["modulus"] = m
        v = in_int_mod(parse_poly(args.expr), m)
    elif kind == "int-multiset":
        S = MultisetSpec.of(_int_list(_param(arg, args.multiset, "multiset")))
        params["multiset"] = list(S)
        v = in_int_multiset(parse_poly(args.expr), S)
    elif kind == "ext":
        rel = _int_list(_param(arg, args.relations, "relations"))
        F = GenDualPoly.parse(args.expr, rel)
        params["relations"] = list(F.relations)
        v = in_int_ext(F)
    elif kind == "idealization":
        text = _param(arg, None if args.module is None else f"{args.module},{args.k or 0}", "module")
        spec_text, _, ktext = text.rpartition(",")
        if not spec_text:
            spec_text, ktext = text, str(args.k or 0)
        spec = parse_module_spec(spec_text)
        k = int(ktext)
        F = parse_ideal_poly(args.expr, spec)
        params.update(module=str(spec), k=k)
        v = in_int_idealization(F, k)
    else:
        raise UsageError(f"unsupported target {args.target!r}")
    wit = [] if v.witness is None else [v.witness.to_dict()]
    return params, {"member": v.member}, wit, EXIT_OK if v.member else EXIT_FALSE


# basis --------------------------------------------------------------------

def cmd_basis(args):
    kind, _, arg = args.selector.partition(":")
    D = args.degree
    if D is None or not 0 <= D <= MAX_BASIS_DEGREE:
        raise UsageError(f"--degree must be in 0..{MAX_BASIS_DEGREE}")
    params = {"selector": args.selector, "degree": D, "conjecture": args.conjecture}
    if kind == "mod":
        m = int(_param(arg, args.modulus, "modulus"))
        if m < 1:
            raise UsageError("modulus must be positive")
        lat = basis_int_mod(m, D)
    elif kind == "diff":
        k = int(_param(arg, args.k, "k"))
        if k < 0:
            raise UsageError("k must be nonnegative")
        lat = basis_int_k(k, D)
    else:
        raise UsageError(f"invalid selector {args.selector!r}; use mod:<m> or diff:<k>")
    result = {"label": lat.label, "pivots": lat.pivots, "hnf": lat.basis,
              "rows": [format_binomial(p) for p in lat.polys()]}
    witnesses, code = [], EXIT_OK
    if args.conjecture:
        if kind != "mod" or m != 4:
            raise UsageError("--conjecture applies to mod:4 only")
        rep = conjecture_check_mod4(D)
        result["conjecture"] = rep.to_dict()
        if rep.to_dict().get("witness"):
            witnesses.append({"kind": "lattice-difference", "poly": rep.to_dict()["witness"]})
        if not (all(rep.generators_member) and rep.conjecture_in_computed):
            code = EXIT_FALSE
    return params, result, witnesses, code


# eval ---------------------------------------------------------------------

def _parse_elem(text: str, relations) -> GenDualElem:
    F = GenDualPoly.parse(text, relations)
    if F.degree() > 0:
        raise UsageError("evaluation point must not contain X")
    return GenDualElem(F.relations, {m: p.coeff(0) for m, p in F.components.items()})


def cmd_eval(args):
    params = {"expr": args.expr, "at": args.at}
    if args.relations is not None:
        rel = _int_list(args.relations)
        F = GenDualPoly.parse(args.expr, rel)
        z = _parse_elem(args.at, rel)
        direct = eval_direct(F, z)
        result = {"relations": rel, "direct": format_elem(direct), "integral": direct.is_integral()}
        if not any(rel):
            closed = eval_closed_dual(F, z)
            result["closed"] = format_elem(closed)
            if closed != direct:
                raise InvariantViolation("closed dual evaluation disagrees with Horner")
        elif len(rel) == 1:
            a, b = eval_closed_rho_forms(F, z)
            result["closed"] = format_elem(a)
            if not (a == b == direct):
                raise InvariantViolation("closed rho evaluation disagrees with Horner")
        params["relations"] = rel
    elif args.module is not None:
        spec = parse_module_spec(args.module)
        F = parse_ideal_poly(args.expr, spec)
        if not is_defined(F):
            raise UsageError("polynomial has denominators not invertible on the module")
        z = parse_ideal_poly(args.at, spec).coefficient(0)
        a, b = ideal_eval(F, z), ideal_horner(F, z)
        if a != b:
            raise InvariantViolation("closed formula disagrees with Horner")
        result = {"module": str(spec), "value": str(a), "integral": a.is_integral()}
        params["module"] = str(spec)
    else:
        f = parse_poly(args.expr)
        x = Fraction(args.at)
        result = {"value": str(f(x)), "integral": f(x).denominator == 1}
    return params, result, [], EXIT_OK


# decompose ----------------------------------------------------------------

def cmd_decompose(args):
    params = {"expr": args.expr}
    if args.relations is None and args.module is None:
        f = parse_poly(args.expr)
        result = {"monomial": format_poly(f), "binomial": format_binomial(f),
                  "integer_valued": in_int(f).member}
        return params, result, [], EXIT_OK
    if args.module is not None:
        spec = parse_module_spec(args.module)
        F = parse_ideal_poly(args.expr, spec)
        params["module"] = str(spec)
        result = {"base": format_binomial(F.f), "module_parts": [format_binomial(p) for p in F.h_parts()]}
        return params, result, [], EXIT_OK
    rel = _int_list(args.relations)
    F = GenDualPoly.parse(args.expr, rel)
    params["relations"] = list(F.relations)
    comps = []
    for mask in range(1 << F.n):
        f = F.component(mask)
        S = component_multiset(F.relations, mask)
        entry = {"component": mask_label(mask), "poly": format_binomial(f), "multiset": list(S)}
        try:
            entry["member"] = in_int_multiset(f, S).member
        except CapExceeded:
            entry["member"] = None
        comps.append(entry)
    return params, {"components": comps}, [], EXIT_OK


# vanishing ----------------------------------------------------------------

def cmd_vanishing(args):
    R = parse_ring_spec(args.ring)
    D = R.size if args.degree is None else args.degree
    params = {"ring": str(R), "degree": D}
    if D < 0 or D > MAX_BASIS_DEGREE:
        raise UsageError(f"--degree must be in 0..{MAX_BASIS_DEGREE}")
    result = {"ideal": vanishing_ideal(R, D).to_dict()}
    if D >= R.size:
        result["principality"] = is_principal_slicewise(R, D).to_dict()
        if not result["principality"]["agrees"]:
            raise InvariantViolation("principality disagrees with reducedness")
    if R.size <= MAX_FUNCTION_COUNT_RING:
        counts = {m: poly_function_count(R, m) for m in ("kernel", "image", "kempner")}
        if kempner_count(R) <= 50_000:
            counts["enumerate"] = poly_function_count(R, "enumerate")
        if len(set(counts.values())) != 1:
            raise InvariantViolation(f"function counts disagree: {counts}")
        result["function_count"] = counts
    return params, result, [], EXIT_OK


# verify -------------------------------------------------------------------

def cmd_verify(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    results = run_suite(args.suite, args.seed)
    checks = []
    for r in results:
        d = r.to_dict()
        d.pop("duration", None)
        d["anchor"] = ANCHORS[r.key]
        checks.append(d)
    ok = all(r.passed for r in results)
    params = {"suite": args.suite, "seed": args.seed}
    return params, {"passed": ok, "checks": checks}, [], EXIT_OK if ok else EXIT_FALSE


# plumbing -----------------------------------------------------------------

COMMANDS = {"member": cmd_member, "basis": cmd_basis, "eval": cmd_eval,
            "decompose": cmd_decompose, "vanishing": cmd_vanishing, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ivpoly", description="Exact integer-valued polynomial computations.")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        sp.add_argument("--degree", "-D", type=int)
        sp.add_argument("--modulus", type=int)
        sp.add_argument("--multiset")
        sp.add_argument("--relations")
        sp.add_argument("--module")
        sp.add_argument("--k", type=int)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--conjecture", action="store_true")
        return sp

    s = common(sub.add_parser("member", help="decide membership"))
    s.add_argument("expr")
    s.add_argument("target",
                   help="int | int-k:<k> | int-mod:<m> | int-multiset:<list> | ext:<relations> | "
                        "idealization:<module>,<k>")
    s = common(sub.add_parser("basis", help="HNF basis of a degree slice"))
    s.add_argument("selector", help="mod:<m> | diff:<k>")
    s = common(sub.add_parser("eval", help="evaluate a polynomial"))
    s.add_argument("expr")
    s.add_argument("at")
    s = common(sub.add_parser("decompose", help="split into components"))
    s.add_argument("expr")
    s = common(sub.add_parser("vanishing", help="vanishing ideal over Z/n or a product"))
    s.add_argument("ring", help="Z/n or Z/a x Z/b")
    s = common(sub.add_parser("verify", help="run a verification suite"))
    s.add_argument("suite", nargs="?", default="all")
    return p


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(type(o).__name__)


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]

    def walk(prefix, v, depth):
        pad = "  " * depth
        if isinstance(v, dict):
            lines.append(f"{pad}{prefix}:")
            for k, x in v.items():
                walk(k, x, depth + 1)
        elif isinstance(v, list) and v and all(isinstance(x, (dict, list)) for x in v):
            lines.append(f"{pad}{prefix}:")
            for i, x in enumerate(v):
                walk(f"[{i}]", x, depth + 1)
        else:
            lines.append(f"{pad}{prefix}: {json.dumps(v, default=_json_default)}")

    for key in ("params", "result", "witnesses"):
        walk(key, report[key], 0)
    lines.append(f"duration: {report['duration']:.3f}s")
    return "\n".join(lines)


def run(argv=None) -> tuple[dict | None, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return None, EXIT_USAGE if e.code else EXIT_OK
    t = time.perf_counter()
    echo = {k: v for k, v in vars(args).items() if k not in ("command", "format") and v not in (None, False)}
    report = {"command": args.command, "params": echo, "result": {}, "witnesses": []}
    try:
        params, result, witnesses, code = COMMANDS[args.command](args)
        report.update(params=params, result=result, witnesses=witnesses)
    except (UsageError, ParseError, RelationMismatch, CapExceeded, ValueError, ZeroDivisionError) as e:
        report["result"] = {"error": f"{type(e).__name__}: {e}"}
        code = EXIT_USAGE
    except (InvariantViolation, AssertionError) as e:
        report["result"] = {"error": f"invariant violated: {e}"}
        code = EXIT_INTERNAL
    report["exit_code"] = code
    report["duration"] = time.perf_counter() - t
    report["format"] = getattr(args, "format", "text")
    return report, code


def main(argv=None) -> int:
    report, code = run(argv)
    if report is None:
        return code
    fmt = report.pop("format")
    if fmt == "json":
        print(json.dumps(report, default=_json_default, indent=2))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
