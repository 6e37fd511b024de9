"""Command-line front end.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import reduce as fold
from typing import Optional, Sequence

from . import algebra as alg
from . import families as fam
from . import posets
from .words import CliffError, RangeMap, classify_range_map, format_compact, format_word, m_map, parse_range_map, parse_word

FORMATS = ("text", "csv", "dot", "json")


class UsageError(Exception):
    pass


def _delta_arg(text: str) -> RangeMap:
    try:
        return parse_range_map(text)
    except CliffError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _family_arg(text: str) -> fam.FamilyKind:
    try:
        return fam.FamilyKind.parse(text)
    except CliffError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _word_arg(text: str):
    try:
        return parse_word(text)
    except CliffError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--delta", type=_delta_arg, help="range map, e.g. 'm(2)' or 'seq[0,2];const(1)'")
    p.add_argument("--m", type=int, help="shorthand for --delta 'm(M)'")
    p.add_argument("--family", type=_family_arg, default=fam.FamilyKind.CLIFF, help="cliff, av, hi or ca")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--compact", action="store_true", help="print words as digit strings")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cliffs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list S(n) in lexicographic order")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("hasse", parents=[common], help="Hasse diagram of S(n)")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("product", parents=[common], help="product of basis elements, left to right")
    p.add_argument("--basis", choices=alg.BASES, default="F")
    p.add_argument("words", nargs="+", type=_word_arg)

    p = sub.add_parser("check", parents=[common], help="bounded structural checks of a family")
    p.add_argument("--max-n", type=int, default=4)

    p = sub.add_parser("generators", parents=[common], help="generator counts of the algebra")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--method", choices=("complement", "all"), default="complement")

    p = sub.add_parser("tables", parents=[common], help="cardinality and generator tables")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--ms", default="0,1,2,3", help="comma-separated values of m for the cardinality table")

    p = sub.add_parser("bijection", parents=[common], help="apply one of the named maps to words")
    p.add_argument("--map", required=True, choices=sorted(BIJECTIONS))
    p.add_argument("words", nargs="+", type=_word_arg)
    return parser


def _delta(args) -> RangeMap:
    if args.delta is not None and args.m is not None:
        raise UsageError("give either --delta or --m, not both")
    if args.m is not None:
        if args.m < 0:
            raise UsageError("--m must be a natural number")
        return m_map(args.m)
    if args.delta is None:
        raise UsageError("a range map is required (--delta or --m)")
    return args.delta


def _m(args) -> int:
    if args.m is not None:
        return args.m
    d = _delta(args)
    if d != m_map(d(2)):
        raise UsageError("this map needs --m or a delta of the form m(k)")
    return d(2)


def _fmt(args):
    return format_compact if args.compact else format_word


def _require(args, allowed: Sequence[str]) -> None:
    if args.format not in allowed:
        raise UsageError(f"{args.command} supports --format {', '.join(allowed)}")


# -- commands ---------------------------------------------------------------------------


def cmd_enumerate(args) -> str:
    _require(args, ("text", "csv", "json"))
    S = fam.family(args.family, _delta(args))
    words = [_fmt(args)(u) for u in S.level(args.n)]
    if args.format == "json":
        return json.dumps({"family": S.name, "n": args.n, "elements": words}) + "\n"
    if args.format == "csv":
        return "word\n" + "".join(f'"{w}"\n' if "," in w else f"{w}\n" for w in words)
    return "".join(w + "\n" for w in words)


def cmd_hasse(args) -> str:
    S = fam.family(args.family, _delta(args))
    P = posets.build_poset(S, args.n)
    f = _fmt(args)
    if args.format == "dot":
        return P.to_dot(f"{S.name}({args.n})", f)
    edges = [(f(a), f(b)) for a, b in P.cover_edges]
    if args.format == "json":
        return json.dumps({"family": S.name, "n": args.n, "elements": [f(u) for u in P], "edges": edges}) + "\n"
    if args.format == "csv":
        return "lower,upper\n" + "".join(f'"{a}","{b}"\n' for a, b in edges)
    return "".join(f"{a} < {b}\n" for a, b in edges)


def cmd_product(args) -> str:
    _require(args, ("text", "json"))
    delta = _delta(args)
    A = alg.CliffAlgebra(delta, fam.family(args.family, delta))
    make = getattr(A, args.basis)
    result = fold(lambda x, y: x * y, (make(w) for w in args.words))
    if args.format == "json":
        terms = [[format_word(u), str(result.terms[u])] for u in result.support()]
        return json.dumps({"algebra": A.name, "basis": result.basis, "terms": terms}) + "\n"
    return str(result) + "\n"


def _family_report(S, n_max: int) -> dict:
    delta = S.delta
    pred = posets.subset_predicates(S, n_max)
    out = {
        "family": S.name,
        "max_n": n_max,
        "straight": pred.straight,
        "coated": pred.coated,
        "closed_by_prefix": pred.closed_by_prefix,
        "min_extendable": pred.min_extendable,
        "max_extendable": pred.max_extendable,
    }
    lattice = el = dec = nested = True
    for n in range(1, n_max + 1):
        P = posets.build_poset(S, n)
        lattice = lattice and posets.lattice_checks(P).is_lattice
        if pred.straight:
            rep = posets.el_labeling_check(P)
            el, dec = el and rep.is_el_labeling, dec and rep.at_most_one_weakly_decreasing
        nested = nested and posets.is_nested(P)
    out["lattice"] = lattice
    out["el_labeling"] = el if pred.straight else None
    out["at_most_one_weakly_decreasing"] = dec if pred.straight else None
    out["nested"] = nested
    if delta(1) == 0 and lattice:
        out["contraction_verified"] = posets.contraction_sequence(S, n_max).verified
    images = [posets.elevation_image(S, n) for n in range(n_max + 1)]
    out["elevation_injective"] = all(len(images[n]) == len(S.level(n)) for n in range(n_max + 1))
    out["quotient_wellformed"] = alg.quotient_wellformed(S, n_max)
    if classify_range_map(delta).valley_free and out["quotient_wellformed"]:
        out["interval_condition"] = alg.interval_condition_check(alg.CliffAlgebra(delta, S), n_max).holds
    return out


def cmd_check(args) -> str:
    _require(args, ("text", "json"))
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    report = _family_report(fam.family(args.family, _delta(args)), args.max_n)
    if args.format == "json":
        return json.dumps(report) + "\n"
    show = {True: "true", False: "false", None: "n/a"}
    return "".join(f"{k}: {show.get(v, v) if isinstance(v, (bool, type(None))) else v}\n" for k, v in report.items())


def cmd_generators(args) -> str:
    _require(args, ("text", "csv", "json"))
    delta = _delta(args)
    A = alg.CliffAlgebra(delta, fam.family(args.family, delta))
    gens = alg.generator_counts(A, args.max_n, method=args.method)
    rows = [(A.name, n, A.dim(n), gens[n]) for n in range(args.max_n + 1)]
    if args.format == "csv":
        return alg.generator_table_csv(rows)
    if args.format == "json":
        return json.dumps({"algebra": A.name, "dims": [r[2] for r in rows], "generators": gens}) + "\n"
    return " ".join(map(str, gens)) + "\n"


def cmd_tables(args) -> str:
    _require(args, ("csv", "text"))
    try:
        ms = [int(x) for x in args.ms.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse --ms {args.ms!r}") from None
    kinds = [fam.FamilyKind.AVALANCHE, fam.FamilyKind.HILL, fam.FamilyKind.CANYON]
    card = fam.cardinality_table_csv(fam.cardinality_rows(kinds, ms, args.max_n))
    rows = []
    for kind in (fam.FamilyKind.HILL, fam.FamilyKind.CANYON):
        for m in (1, 2):
            rows += alg.generator_rows(alg.CliffAlgebra.of_family(kind, m), args.max_n)
    return card + "\n" + alg.generator_table_csv(rows)


BIJECTIONS = {
    "phi": lambda args, w: fam.phi(_m(args), w),
    "phi-inverse": lambda args, w: fam.phi_inverse(_m(args), w),
    "psi": lambda args, w: fam.psi(_m(args), w),
    "psi-inverse": lambda args, w: fam.psi_inverse(_m(args), w),
    "theta": lambda args, w: fam.theta(_m(args), w),
    "theta-inverse": lambda args, w: fam.theta_inverse(_m(args), w),
    "canyon-to-hill": lambda args, w: fam.canyon_to_hill(_delta(args), w),
    "elevation": lambda args, w: posets.elevation(fam.family(args.family, _delta(args)), w),
    "elevation-inverse": lambda args, w: posets.elevation_inverse(fam.family(args.family, _delta(args)), w),
    "lehmer": lambda args, w: fam.lehmer_code(w),
    "lehmer-decode": lambda args, w: fam.lehmer_decode(w),
}


def cmd_bijection(args) -> str:
    _require(args, ("text", "csv", "json"))
    f = _fmt(args)
    pairs = [(f(w), f(BIJECTIONS[args.map](args, w))) for w in args.words]
    if args.format == "json":
        return json.dumps({"map": args.map, "pairs": pairs}) + "\n"
    if args.format == "csv":
        return "input,output\n" + "".join(f'"{a}","{b}"\n' for a, b in pairs)
    return "".join(f"{a} -> {b}\n" for a, b in pairs)


COMMANDS = {
    "enumerate": cmd_enumerate,
    "hasse": cmd_hasse,
    "product": cmd_product,
    "check": cmd_check,
    "generators": cmd_generators,
    "tables": cmd_tables,
    "bijection": cmd_bijection,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cliffs: error: {exc}", file=sys.stderr)
        return 2
    except CliffError as exc:
        print(f"cliffs: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
