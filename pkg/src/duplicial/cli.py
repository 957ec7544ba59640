"""Command-line interface: ``duplicial <group> <command> ...``.

Exit codes: 0 success, 1 verification or consistency failure, 2 usage,
parse or resource-limit error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, dyson, hopf, series, tamari, tree, verify


class UsageError(Exception):
    """Bad operand on the command line (exit code 2)."""


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# trees

def _tree_arg(text):
    return tree.parse_tree(text)


def cmd_trees(args):
    fmt = args.format
    if args.cmd == "enum":
        out = tree.enumerate_trees(args.n, max_order=args.cap)
    elif args.cmd == "over":
        out = tree.over(_tree_arg(args.u), _tree_arg(args.v))
    elif args.cmd == "under":
        out = tree.under(_tree_arg(args.u), _tree_arg(args.v))
    elif args.cmd == "graft":
        out = tree.graft(_tree_arg(args.u), _tree_arg(args.v))
    elif args.cmd == "spine":
        out = tree.left_spine_factors(_tree_arg(args.t))
    else:
        out = tree.right_oriented_leaves(_tree_arg(args.t))
    if fmt == "json":
        _emit(json.dumps(out if not isinstance(out, list) else [str(t) for t in out]))
    elif isinstance(out, list):
        _emit("\n".join(out))
    else:
        _emit(str(out))
    return 0


# series

def _load_series(text, order):
    """A series operand: a catalog name, a JSON file path, or inline JSON."""
    if text in catalog.CATALOG:
        if order is None:
            raise UsageError(f"catalog series {text} needs --order")
        return catalog.CATALOG[text](order)
    if text.lstrip().startswith("{"):
        return series.series_from_json(text)
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return series.series_from_json(fh.read())
    raise UsageError(f"{text!r} is not a catalog name, a file, or inline JSON")


def _series_out(s):
    _emit(series.series_to_json(s, indent=2))


def cmd_series(args):
    if args.cmd == "show":
        s = catalog.CATALOG[args.name](args.order)
        if args.w is not None:
            s = series.specialize_series(s, series_number(args.w))
        _series_out(s)
    elif args.cmd == "compose":
        a = _load_series(args.a, args.order)
        b = _load_series(args.b, args.order)
        _series_out(series.series_compose(a, b))
    elif args.cmd == "invert":
        a = _load_series(args.a, args.order)
        fn = {"compose": series.series_compose_inverse, "over": series.series_inverse_over,
              "under": series.series_inverse_under}[args.kind]
        _series_out(fn(a))
    elif args.cmd == "suspend":
        _series_out(series.suspension(_load_series(args.a, args.order)))
    else:
        if (args.name is None) == (args.a is None):
            raise UsageError("project needs exactly one of --name or --a")
        a = _load_series(args.name or args.a, args.order)
        _emit(str(series.project(a)))
    return 0


def series_number(text):
    from fractions import Fraction
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


# tamari

def cmd_tamari(args):
    if args.cmd == "lattice":
        lat = tamari.build_lattice(args.n)
        _emit(tamari.export_dot(lat) if args.format == "dot" else tamari.export_json(lat))
        return 0
    if args.cmd == "mobius":
        mob = tamari.mobius_from_min(args.n)
        if args.format == "json":
            _emit(json.dumps({str(t): m for t, m in sorted(mob.items())}))
        else:
            _emit("\n".join(f"{t}\t{m}" for t, m in sorted(mob.items())))
        return 0
    rep = tamari.interval_product_check(args.p, args.q)
    if rep.passed:
        _emit(f"pass: {rep.checked} pairs checked for p={args.p}, q={args.q}")
        return 0
    t1, t2, lhs, rhs = rep.counterexample
    _emit(f"fail: mu at {tree.over(t1, t2)} is {lhs}, product is {rhs}")
    return 1


# hopf

def cmd_hopf(args):
    t = _tree_arg(args.t)
    if args.cmd == "antipode":
        p = hopf.antipode_e(t)
        if args.format == "json":
            _emit(json.dumps([{"coeff": str(c), "monomial": [str(s) for s in m]}
                              for m, c in sorted(p.terms.items())]))
        else:
            _emit(str(p))
        return 0
    fn = {"delta-e": hopf.delta_e, "delta-p": hopf.delta_p,
          "delta-a": hopf.delta_a, "coaction-a": hopf.coaction_a}[args.cmd]
    ts = fn(t)
    _emit(json.dumps(ts.to_json()) if args.format == "json" else str(ts))
    return 0


# dyson

def cmd_dyson(args):
    ok = True
    lines = []
    for alg in (dyson.matrix_algebra_instance(args.dim, args.seed),
                dyson.nonbilinear_instance(args.dim, args.seed)):
        rep = dyson.aggregate_check(alg, args.orders)
        lines.append(str(rep))
        if alg.name.startswith("matrix"):
            ok = ok and rep.passed
    _emit("\n".join(lines))
    return 0 if ok else 1


# verify

def cmd_verify(args):
    report = verify.run_suite(args.suite, args.max_order, args.seed)
    _emit(report.table())
    _emit(report.to_json(timings=args.timings))
    return 0 if report.passed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="duplicial", description=__doc__.splitlines()[0])
    groups = p.add_subparsers(dest="group", required=True)

    tp = groups.add_parser("trees", help="enumerate and combine planar binary trees")
    tsub = tp.add_subparsers(dest="cmd", required=True)
    e = tsub.add_parser("enum")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--cap", type=int, default=tree.DEFAULT_MAX_ORDER)
    for name in ("over", "under", "graft"):
        c = tsub.add_parser(name)
        c.add_argument("u")
        c.add_argument("v")
    for name in ("spine", "leaves"):
        tsub.add_parser(name).add_argument("t")
    for c in tsub.choices.values():
        c.add_argument("--format", choices=("lines", "json"), default="lines")

    sp = groups.add_parser("series", help="catalog series and series algebra (JSON)")
    ssub = sp.add_subparsers(dest="cmd", required=True)
    c = ssub.add_parser("show")
    c.add_argument("name", choices=sorted(catalog.CATALOG))
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--w", help="substitute a rational value for w")
    c = ssub.add_parser("compose")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c = ssub.add_parser("invert")
    c.add_argument("--a", required=True)
    c.add_argument("--kind", choices=("compose", "over", "under"), default="compose")
    ssub.add_parser("suspend").add_argument("--a", required=True)
    c = ssub.add_parser("project")
    c.add_argument("--name")
    c.add_argument("--a")
    for name, c in ssub.choices.items():
        if name != "show":
            c.add_argument("--order", type=int, help="truncation order for catalog operands")

    tm = groups.add_parser("tamari", help="Tamari lattices and Möbius values")
    msub = tm.add_subparsers(dest="cmd", required=True)
    c = msub.add_parser("lattice")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--format", choices=("dot", "json"), default="dot")
    c = msub.add_parser("mobius")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--format", choices=("lines", "json"), default="lines")
    c = msub.add_parser("check-intervals")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)

    hp = groups.add_parser("hopf", help="coproducts, antipode and coaction on trees")
    hsub = hp.add_subparsers(dest="cmd", required=True)
    for name in ("delta-e", "delta-p", "antipode", "delta-a", "coaction-a"):
        c = hsub.add_parser(name)
        c.add_argument("t")
        c.add_argument("--format", choices=("text", "json"), default="text")

    dp = groups.add_parser("dyson", help="tree expansion of a bilinear recursion")
    dsub = dp.add_subparsers(dest="cmd", required=True)
    c = dsub.add_parser("demo")
    c.add_argument("--dim", type=int, default=2)
    c.add_argument("--orders", type=int, default=6)
    c.add_argument("--seed", type=int, default=42)

    vp = groups.add_parser("verify", help="run verification suites")
    vp.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    vp.add_argument("--max-order", type=int)
    vp.add_argument("--seed", type=int, default=42)
    vp.add_argument("--timings", action="store_true", help="include wall times in the JSON")
    return p


_COMMANDS = {"trees": cmd_trees, "series": cmd_series, "tamari": cmd_tamari,
             "hopf": cmd_hopf, "dyson": cmd_dyson, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.group](args)
    except catalog.CatalogDefect as exc:
        print(f"error: consistency check failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        # parse errors, resource caps, schema violations and flavor errors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
