"""Command-line interface: ``unexpected-curves <command> ...``.

Exit codes: 0 success, 2 invalid input or usage, 3 inconclusive computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import generators as gen
from .arrangement import (
    LineArrangement,
    dual_arrangement,
    is_full_rank,
    is_nearly_supersolvable,
    is_supersolvable,
    max_multiplicity,
    sing_at_least,
    singular_locus,
)
from .certifier import certify, certify_degree, certify_problem_b
from .errors import AdditionDeletionError, ArrangementError, InconclusiveError
from .fields import scalar_to_json
from .interpolation import FatPointScheme, default_prime_bits, expected_dimension, ideal_dimension, parse_fat
from .io import (
    ArrangementDocument,
    dumps,
    load_document,
    make_report,
    parse_document,
    read_text,
    serialize_document,
    write_text,
)
from .render import render_svg
from .splitting import (
    addition_chain,
    empirical_splitting,
    nearly_supersolvable_splitting,
    supersolvable_splitting,
)

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 2, 3


class UsageError(Exception):
    pass


def _primes_arg(text: str):
    parts = [t for t in text.split(",") if t.strip()]
    try:
        values = [int(t) for t in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a count or a comma-separated prime list, got {text!r}")
    if len(values) == 1 and "," not in text:
        if values[0] < 1:
            raise argparse.ArgumentTypeError("prime count must be positive")
        return values[0]
    return values


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    parser.add_argument("--samples", type=int, default=d(3), help="general-point samples (default 3)")
    parser.add_argument("--primes", type=_primes_arg, default=d(2),
                        help="number of random primes, or an explicit comma-separated list (default 2)")
    parser.add_argument("--json", action="store_true", default=d(False), help="print the JSON report")
    parser.add_argument("--report", metavar="PATH", default=d(None), help="also write the JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unexpected-curves",
                                     description="Line arrangements, splitting types and unexpected curves.")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    g = sub.add_parser("generate", parents=[common], help="build a named arrangement family")
    g.add_argument("--family", required=True, choices=gen.FAMILIES)
    _family_params(g, "")
    g.add_argument("--of", dest="of_family", choices=gen.FAMILIES, help="inner family for dual-of / sing-geq-of")
    _family_params(g, "of-")
    g.add_argument("-o", "--output", default="-")

    a = sub.add_parser("analyze", parents=[common], help="combinatorics and splitting type")
    a.add_argument("input")

    d = sub.add_parser("dim", parents=[common], help="dim [I(Z + X)]_degree")
    d.add_argument("input")
    d.add_argument("--degree", type=int, required=True)
    d.add_argument("--fat", action="append", default=[], help='e.g. "3@generic" or "2@(1:-1:1)"')
    d.add_argument("--exact", action="store_true", help="rational elimination instead of primes")

    s = sub.add_parser("splitting", parents=[common], help="splitting type by a chosen route")
    s.add_argument("input")
    s.add_argument("--method", choices=["empirical", "supersolvable", "nearly", "chain"], default="empirical")
    s.add_argument("--chain-file", help="document with the lines to add, in order")
    s.add_argument("--base-splitting", help='splitting of the input, "a,b" (default: computed)')

    c = sub.add_parser("certify", parents=[common], help="unexpected-curve verdict")
    c.add_argument("input")
    c.add_argument("--degree", type=int, help="curve degree to test")
    c.add_argument("--fat", action="append", default=[], help="fat scheme for the general problem")
    c.add_argument("--no-curve", action="store_true", help="skip computing the curve equation")

    du = sub.add_parser("dual", parents=[common], help="dual arrangement A^d (or swap points/lines)")
    du.add_argument("input")
    du.add_argument("--swap", action="store_true", help="only exchange lines and points")
    du.add_argument("-o", "--output", default="-")

    sg = sub.add_parser("sing", parents=[common], help="singular points of multiplicity >= k")
    sg.add_argument("input")
    sg.add_argument("--min-mult", type=int, default=2)
    sg.add_argument("-o", "--output", default="-")

    r = sub.add_parser("render", parents=[common], help="SVG drawing")
    r.add_argument("input")
    r.add_argument("--mode", choices=["affine", "disk"], default="affine")
    r.add_argument("--size", type=int, default=400)
    r.add_argument("--scale", type=float, default=1.0, help="disk mode: affine zoom factor")
    r.add_argument("--box", help="affine viewport xmin,ymin,xmax,ymax")
    r.add_argument("-o", "--output", default="-")
    return parser


def _family_params(p: argparse.ArgumentParser, prefix: str) -> None:
    dest = prefix.replace("-", "_")
    p.add_argument(f"--{prefix}N", dest=f"{dest}N", type=int)
    p.add_argument(f"--{prefix}k", dest=f"{dest}k", type=int)
    p.add_argument(f"--{prefix}j", dest=f"{dest}j", type=int)
    p.add_argument(f"--{prefix}m", dest=f"{dest}m", type=int)
    p.add_argument(f"--{prefix}stage", dest=f"{dest}stage")
    p.add_argument(f"--{prefix}field", dest=f"{dest}field", choices=["cyclotomic", "rational"],
                   default="cyclotomic")
    if not prefix:
        p.add_argument("--threshold", type=int, help="multiplicity threshold for sing-geq-of")


def _spec(args, prefix: str, family: str) -> gen.FamilySpec:
    get = lambda name: getattr(args, prefix + name)  # noqa: E731
    return gen.FamilySpec(family, N=get("N"), k=get("k"), j=get("j"), m=get("m"), stage=get("stage"),
                          field=get("field"), seed=args.seed, bits=default_prime_bits())


# ---------------------------------------------------------------------------
# commands

def cmd_generate(args) -> tuple[dict | None, str]:
    inner = _spec(args, "of_", args.of_family) if args.of_family else None
    spec = _spec(args, "", args.family)
    if inner is not None:
        spec = gen.FamilySpec(spec.family, threshold=args.threshold, of=inner, seed=args.seed)
    elif args.family == "sing-geq-of" or args.family == "dual-of":
        raise UsageError(f"--family {args.family} needs --of")
    obj = gen.build(spec)
    notes = [f"family={args.family}", f"seed={args.seed}"]
    write_text(args.output, serialize_document(obj, notes))
    return None, ""


def _analysis(A: LineArrangement, args) -> dict:
    sing = singular_locus(A)
    counts: dict[str, int] = {}
    for m in sorted(set(sing.multiplicities())):
        counts[str(m)] = sing.count(m)
    ss = is_supersolvable(A)
    out: dict[str, Any] = {
        "lines": len(A),
        "max_multiplicity": max_multiplicity(A),
        "singular_points_by_multiplicity": counts,
        "full_rank": is_full_rank(A),
        "supersolvable": bool(ss),
    }
    if ss:
        out["modular_point"] = [scalar_to_json(c) for c in ss.witness.coords]
    if len(A) >= 3:
        ns = is_nearly_supersolvable(A)
        out["nearly_supersolvable"] = bool(ns)
    s = empirical_splitting(A, samples=args.samples, seed=args.seed, primes=args.primes)
    out["splitting"] = s.to_json()
    if ss:
        closed = supersolvable_splitting(A)
        out["supersolvable_splitting"] = list(closed.pair)
        out["routes_agree"] = closed == s
    return out


def cmd_analyze(args):
    doc = load_document(args.input)
    res = _analysis(doc.arrangement(), args)
    text = [f"lines: {res['lines']}", f"max multiplicity: {res['max_multiplicity']}",
            f"supersolvable: {str(res['supersolvable']).lower()}",
            f"splitting: ({res['splitting']['a']}, {res['splitting']['b']})"]
    return _report(args, "analyze", doc, res), "\n".join(text) + "\n"


def cmd_dim(args):
    doc = load_document(args.input)
    Z = doc.configuration()
    X = FatPointScheme(parse_fat(f) for f in args.fat)
    rep = ideal_dimension(Z, X, args.degree, samples=args.samples, seed=args.seed, primes=args.primes,
                          exact=args.exact)
    exp = expected_dimension(Z, X, args.degree, seed=args.seed, primes=args.primes, exact=args.exact)
    res = {"dimension": rep.to_json(), "expected": exp, "fat": [str(f) for f in X]}
    return _report(args, "dim", doc, res), f"dimension: {rep.dimension}\nexpected: {exp}\n"


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise UsageError(f"bad splitting {text!r}; expected a,b")
    return a, b


def cmd_splitting(args):
    doc = load_document(args.input)
    A = doc.arrangement()
    kw = dict(samples=args.samples, seed=args.seed, primes=args.primes)
    if args.method == "empirical":
        s = empirical_splitting(A, **kw)
    elif args.method == "supersolvable":
        s = supersolvable_splitting(A)
    elif args.method == "nearly":
        s = nearly_supersolvable_splitting(A)
    else:
        if not args.chain_file:
            raise UsageError("--method chain needs --chain-file")
        steps_doc = load_document(args.chain_file)
        if steps_doc.lines is None:
            raise UsageError("chain file must be a lines document")
        if args.base_splitting:
            base = _parse_pair(args.base_splitting)
        elif is_supersolvable(A):
            base = supersolvable_splitting(A)
        else:
            base = empirical_splitting(A, **kw)
        try:
            cert = addition_chain(A, base, steps_doc.lines)
        except AdditionDeletionError as exc:
            res = {"error": str(exc), "failed_step": exc.step_index, "restriction_count": exc.count,
                   "splitting_before": list(exc.splitting)}
            raise _ChainFailure(_report(args, "splitting", doc, res), str(exc))
        s = cert.terminus
    res = {"method": args.method, "splitting": s.to_json()}
    return _report(args, "splitting", doc, res), f"splitting: ({s.a}, {s.b})\n"


class _ChainFailure(Exception):
    def __init__(self, report, message):
        super().__init__(message)
        self.report = report


def cmd_certify(args):
    doc = load_document(args.input)
    Z = doc.configuration()
    kw = dict(samples=args.samples, seed=args.seed, primes=args.primes)
    if args.fat:
        if args.degree is None:
            raise UsageError("--fat needs --degree")
        X = FatPointScheme(parse_fat(f) for f in args.fat)
        v = certify_problem_b(Z, X, args.degree, **kw)
        res = v.to_json() | {"fat": [str(f) for f in X]}
        text = f"admits degree {args.degree} w.r.t. {' + '.join(map(str, X))}: {str(v.value).lower()}\n"
    elif args.degree is not None:
        v = certify_degree(Z, args.degree, **kw)
        res = v.to_json()
        text = f"admits degree {args.degree}: {str(v.value).lower()}\n"
    else:
        v = certify(Z, compute_curve=not args.no_curve, **kw)
        res = v.to_json()
        if v.admits is None:
            text = "no verdict: degenerate input\n"
        else:
            text = f"admits: {str(v.admits).lower()}\nsplitting: ({v.splitting.a}, {v.splitting.b})\n"
            if v.admits:
                lo, hi = v.interval
                text += f"interval: ({lo}, {hi}]\n"
    return _report(args, "certify", doc, res), text


def cmd_dual(args):
    doc = load_document(args.input)
    obj = doc.to_object()
    if args.swap or doc.points is not None:
        out = obj.dual() if doc.points is not None else obj.dual_configuration()
    else:
        out = dual_arrangement(obj)
    write_text(args.output, serialize_document(out, ["dual of " + (doc.label or "input")]))
    return None, ""


def cmd_sing(args):
    doc = load_document(args.input)
    out = sing_at_least(doc.arrangement(), args.min_mult)
    write_text(args.output, serialize_document(out, [f"singular points of multiplicity >= {args.min_mult}"]))
    return None, ""


def cmd_render(args):
    doc = load_document(args.input)
    box = None
    if args.box:
        try:
            box = tuple(float(t) for t in args.box.split(","))
        except ValueError:
            box = ()
        if len(box) != 4:
            raise UsageError("--box needs four numbers")
    svg = render_svg(doc.arrangement(), mode=args.mode, size=args.size, box=box, scale=args.scale)
    write_text(args.output, svg)
    return None, ""


def _report(args, command: str, doc: ArrangementDocument, results: dict) -> dict:
    return make_report(command, doc, results, seed=args.seed, samples=args.samples, primes=args.primes)


COMMANDS = {
    "generate": cmd_generate, "analyze": cmd_analyze, "dim": cmd_dim, "splitting": cmd_splitting,
    "certify": cmd_certify, "dual": cmd_dual, "sing": cmd_sing, "render": cmd_render,
}


def _emit(args, report, text):
    if report is None:
        return
    if args.report:
        write_text(args.report, dumps(report))
    sys.stdout.write(dumps(report) if args.json else text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, text = COMMANDS[args.command](args)
        _emit(args, report, text)
        return EXIT_OK
    except _ChainFailure as exc:
        _emit(args, exc.report, f"chain failed: {exc}\n")
        return EXIT_INCONCLUSIVE
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (UsageError, ArrangementError, ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
