"""``symcenter`` command line."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import casebook
from .focus import focus_quantities
from .groebner import DEFAULT_MAX_PAIRS, DEFAULT_MAX_TERMS, Budget, BudgetExceeded, buchberger
from .ideal import Ideal, RationalMap, eliminate, ideal_equal, implicitize, intersect, is_member, quotient, radical_member
from .orders import DEGREVLEX, LEX, from_name
from .poly import PolynomialSyntaxError, UnknownVariableError, VarContext, parse, parse_list, variable_names
from .sibirsky import SystemSpec, dimension, hilbert_basis, symmetry_ideal

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- input ---------------------------------------------------------------------------
def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{path}: no such file")
    return p.read_text()


def load_spec(arg: str) -> SystemSpec:
    """A spec file, or the name of a shipped case."""
    if not Path(arg).exists() and arg in casebook.case_names():
        return casebook.load_case(arg).spec
    try:
        return SystemSpec.from_text(_read(arg))
    except ValueError as e:
        raise UsageError(f"{arg}: {e}") from e


def _lines(path: str) -> list:
    return [ln.split("#", 1)[0].strip() for ln in _read(path).splitlines()]


def _context(texts, names: str | None) -> VarContext:
    if names:
        return VarContext(tuple(n.strip() for n in names.split(",") if n.strip()))
    seen: dict = {}
    for t in texts:
        for n in variable_names(t):
            seen.setdefault(n, None)
    if not seen:
        raise UsageError("cannot infer variables from constant input; pass --vars")
    return VarContext(tuple(seen))


def load_ideals(paths, args, extra=()) -> tuple:
    """Ideals from polynomial-list files plus loose polynomials, in one shared context."""
    lists = [[t for t in _lines(p) if t] for p in paths]
    ctx = _context([t for ls in lists for t in ls] + list(extra), args.vars)
    ideals = [Ideal(parse_list(ls, ctx), ctx) for ls in lists]
    return ctx, ideals, [parse(t, ctx) for t in extra]


# -- output --------------------------------------------------------------------------
def _order(args, default):
    return from_name(args.order) if args.order else default


def emit_polys(args, polys, ctx: VarContext, order) -> None:
    lines = [p.format(order) for p in polys]
    if args.format == "json":
        print(json.dumps({"variables": list(ctx.names), "order": order.kind, "generators": lines}, indent=2))
    else:
        print("\n".join(lines))


def emit_value(args, key: str, value) -> None:
    if args.format == "json":
        print(json.dumps({key: value}))
    elif isinstance(value, bool):
        print("true" if value else "false")
    else:
        print(value)


# -- verbs ---------------------------------------------------------------------------
def cmd_symmetry(args, budget):
    spec = load_spec(args.spec)
    I = symmetry_ideal(spec, budget=budget)
    emit_polys(args, I.generators, spec.ctx, _order(args, LEX))


def cmd_hilbert(args, budget):
    spec = load_spec(args.spec)
    hb = hilbert_basis(spec, budget=budget)
    vecs = [list(v) for v in hb.vectors]
    if args.format == "json":
        print(json.dumps({"variables": list(spec.ctx.names), "vectors": vecs}))
    else:
        print("\n".join(" ".join(map(str, v)) for v in vecs))


def cmd_dimension(args, budget):
    emit_value(args, "dimension", dimension(load_spec(args.spec)))


def cmd_focus(args, budget):
    spec = load_spec(args.spec)
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    fq = focus_quantities(spec, args.kmax)
    order = _order(args, LEX)
    if args.format == "json":
        print(json.dumps({"variables": list(spec.ctx.names), "order": order.kind,
                          "focus_quantities": [g.format(order) for g in fq]}, indent=2))
    else:
        for k, g in enumerate(fq, start=1):
            print(f"g_{k}{k} = {g.format(order)}")


def cmd_gb(args, budget):
    ctx, (I,), _ = load_ideals([args.ideal], args)
    order = _order(args, DEGREVLEX)
    G = buchberger(I.generators, order, budget=budget, ctx=ctx)
    emit_polys(args, G.generators, ctx, order)


def cmd_eliminate(args, budget):
    ctx, (I,), _ = load_ideals([args.ideal], args)
    drop = [n.strip() for n in args.drop.split(",") if n.strip()]
    for n in drop:
        if n not in ctx:
            raise UsageError(f"cannot eliminate unknown variable {n}")
    J = eliminate(I, drop, budget=budget)
    emit_polys(args, J.generators, J.ctx, _order(args, LEX))


def cmd_intersect(args, budget):
    ctx, (I, J), _ = load_ideals([args.first, args.second], args)
    K = intersect(I, J, budget=budget)
    emit_polys(args, K.groebner(budget=budget).generators, ctx, _order(args, LEX))


def cmd_quotient(args, budget):
    ctx, (I, H), _ = load_ideals([args.first, args.second], args)
    if H.is_zero():
        raise UsageError("quotient by the zero ideal")
    K = quotient(I, H, budget=budget)
    emit_polys(args, K.groebner(budget=budget).generators, ctx, _order(args, LEX))


def cmd_member(args, budget):
    _, (I,), (f,) = load_ideals([args.ideal], args, [args.poly])
    emit_value(args, "member", is_member(f, I, budget=budget))


def cmd_radical_member(args, budget):
    _, (I,), (f,) = load_ideals([args.ideal], args, [args.poly])
    emit_value(args, "radical_member", radical_member(f, I, budget=budget))


def cmd_equal(args, budget):
    _, (I, J), _ = load_ideals([args.first, args.second], args)
    emit_value(args, "equal", ideal_equal(I, J, budget=budget))


def cmd_implicitize(args, budget):
    """Map file: JSON ``{"params": [...], "images": {"x": "num" | ["num", "den"]}}``."""
    try:
        data = json.loads(_read(args.map))
        target = VarContext(tuple(data["images"]))
        rmap = RationalMap.from_strings(target, data["params"], data["images"])
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise UsageError(f"{args.map}: malformed map file ({e})") from e
    J = implicitize(rmap, budget=budget)
    emit_polys(args, J.groebner(budget=budget).generators, J.ctx, _order(args, LEX))


def cmd_verify(args, budget):
    if args.case == "all":
        reports = casebook.verify_all(include_slow=args.include_slow)
    elif args.case in casebook.VERIFIERS:
        reports = [casebook.verify(args.case)]
    else:
        raise UsageError(f"unknown case {args.case}; choose from all, {', '.join(casebook.VERIFIERS)}")
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(f"{r.case}: {'green' if r.green else 'RED'}")
            for c in r.checks:
                print(f"  {c.name}: {c.status}")
    return EXIT_OK if all(r.green for r in reports) else EXIT_FAIL


# -- parser --------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", choices=["lex", "degrevlex"],
                        help="term order for output (gb: also the basis order); default lex, gb degrevlex")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS,
                        help=f"S-pair budget per Groebner run (default {DEFAULT_MAX_PAIRS})")
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS,
                        help=f"term budget per intermediate polynomial (default {DEFAULT_MAX_TERMS})")
    common.add_argument("--vars", help="comma-separated variable order for polynomial-list input")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="symcenter", description="Symmetry components and focus quantities "
                                "of planar polynomial systems with a 1:-1 resonant singular point.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    verb("symmetry", cmd_symmetry, "Sibirsky ideal generators").add_argument("spec")
    verb("hilbert", cmd_hilbert, "Hilbert basis of the invariant monoid").add_argument("spec")
    verb("dimension", cmd_dimension, "dimension of the symmetry component").add_argument("spec")
    sp = verb("focus", cmd_focus, "focus quantities g_11 ... g_KK")
    sp.add_argument("spec")
    sp.add_argument("--kmax", type=int, default=3)
    verb("gb", cmd_gb, "reduced Groebner basis").add_argument("ideal")
    sp = verb("eliminate", cmd_eliminate, "elimination ideal")
    sp.add_argument("ideal")
    sp.add_argument("--drop", required=True, help="comma-separated variables to eliminate")
    for name, fn, help in [("intersect", cmd_intersect, "intersection of two ideals"),
                           ("quotient", cmd_quotient, "ideal quotient FIRST : SECOND"),
                           ("equal", cmd_equal, "whether two ideals are equal")]:
        sp = verb(name, fn, help)
        sp.add_argument("first")
        sp.add_argument("second")
    for name, fn, help in [("member", cmd_member, "ideal membership"),
                           ("radical-member", cmd_radical_member, "radical membership")]:
        sp = verb(name, fn, help)
        sp.add_argument("poly", help="polynomial in the text grammar")
        sp.add_argument("ideal")
    verb("implicitize", cmd_implicitize, "closure of the image of a rational map").add_argument("map")
    sp = verb("verify", cmd_verify, "run casebook verifications")
    sp.add_argument("case", help="case name or 'all'")
    sp.add_argument("--include-slow", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    budget = Budget(args.max_pairs, args.max_terms)
    try:
        return args.fn(args, budget) or EXIT_OK
    except BudgetExceeded as e:
        print(f"symcenter: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, PolynomialSyntaxError, UnknownVariableError, ValueError, OSError) as e:
        print(f"symcenter: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
