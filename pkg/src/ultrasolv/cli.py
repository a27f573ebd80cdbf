"""Command-line entry point: ``ultrasolv verify|count|lemma|classify``."""

from __future__ import annotations

import argparse
import re
import sys

from .classify import (
    abelian_aut_supersolvable_rule,
    aut_supersolvable,
    automorphisms_for_search,
    condition2,
    is_2_nilpotent,
    is_A_solvable,
    is_fully_solvable,
    is_solvable,
    is_strictly_p_closed,
    is_supersolvable,
    is_ultrasolvable,
)
from .certificates import (
    ChainCertificate,
    ChiefSeriesRecord,
    DecompositionCertificate,
    DerivedSeriesRecord,
    HallCertificate,
    StrictPClosedCertificate,
)
from .core import PermSpec, cycles_to_images, from_generators, prime_divisors
from .errors import GroupError, InvalidPermutation
from .harness.catalog import default_catalog_path, ingest_catalog, select
from .harness.lemmas import LEMMAS, verify_lemma
from .harness.verify import (
    count_predicate,
    PREDICATES,
    read_report,
    recheck_certificates,
    summarize,
    summary_table,
    verify_main,
    write_report,
)
from .morphisms import DEFAULT_AUT_CAP, automorphism_order, inner_automorphisms
from .structure import abelian_invariants


def parse_permutation(text: str, degree: int | None = None) -> tuple[list[int], str]:
    """Parse ``1,2,0`` / ``[1 2 0]`` image arrays or ``(0 1 2)(3 4)`` cycles.

    Returns the parsed object and its kind ("images" or "cycles"); cycles are
    returned as a list of tuples.
    """
    text = text.strip()
    if text.startswith("(") or text == "()":
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            if pts:
                cycles.append(tuple(pts))
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise InvalidPermutation(f"cannot parse cycles {text!r}")
        return cycles, "cycles"
    body = text.strip("[]")
    try:
        return [int(x) for x in re.split(r"[\s,]+", body.strip()) if x], "images"
    except ValueError:
        raise InvalidPermutation(f"cannot parse permutation {text!r}") from None


def parse_generators(text: str, degree: int | None = None) -> PermSpec:
    """Semicolon-separated permutations in either notation."""
    parsed = [parse_permutation(p) for p in text.split(";") if p.strip()]
    need = 1
    for obj, kind in parsed:
        if kind == "images":
            need = max(need, len(obj))
        else:
            need = max([need] + [max(c) + 1 for c in obj])
    degree = need if degree is None else degree
    gens = []
    for obj, kind in parsed:
        if kind == "cycles":
            if any(x < 0 or x >= degree for c in obj for x in c):
                raise InvalidPermutation(f"cycle point outside 0..{degree - 1}")
            gens.append(cycles_to_images(obj, degree))
        else:
            if len(obj) != degree:
                obj = obj + list(range(len(obj), degree))
            gens.append(tuple(obj))
    return PermSpec(degree, gens)


def _describe(cert, group=None) -> list[str]:
    if cert is None:
        return []
    if isinstance(cert, ChainCertificate):
        return [f"chain ({cert.invariance_kind}): orders {[H.order for H in cert.steps]}, "
                f"factors {cert.factor_orders}, witnesses {cert.witnesses}"]
    if isinstance(cert, ChiefSeriesRecord):
        where = "" if group is None else f" of a group of order {group.order}"
        return [f"chief series{where}: orders {[H.order for H in cert.steps]}, factors {cert.factor_orders}"]
    if isinstance(cert, DerivedSeriesRecord):
        return [f"derived series: orders {[H.order for H in cert.steps]}"]
    if isinstance(cert, DecompositionCertificate):
        lines = [f"H x V with H = {cert.odd_part.elements.tolist()} and V = {cert.klein.elements.tolist()}"]
        return lines + ["  odd factor " + s for s in _describe(cert.odd_chain)]
    if isinstance(cert, HallCertificate):
        return [f"normal Hall subgroup of order {cert.subgroup.order} for primes {sorted(cert.pi)}"]
    if isinstance(cert, StrictPClosedCertificate):
        return [f"normal Sylow {cert.p}-subgroup of order {cert.sylow.order}"]
    return [repr(cert)]


def _show(label: str, verdict, out) -> None:
    note = f"  [{verdict.note}]" if verdict.note else ""
    print(f"{label:<32} {verdict.label()}{note}", file=out)
    for line in _describe(verdict.certificate, verdict.group):
        print(f"{'':<34}{line}", file=out)


def cmd_classify(args, out=None) -> int:
    out = out or sys.stdout
    spec = parse_generators(args.gens, args.degree)
    G = from_generators(spec)
    print(f"group of order {G.order} on {spec.degree} points", file=out)
    _show("solvable", is_solvable(G), out)
    _show("supersolvable", is_supersolvable(G), out)
    _show("Inn-solvable", is_A_solvable(G, inner_automorphisms(G)), out)
    _show("2-nilpotent", is_2_nilpotent(G), out)
    for p in prime_divisors(G.order):
        _show(f"strictly {p}-closed", is_strictly_p_closed(G, p), out)
    print(f"{'|Aut|':<32} {automorphism_order(G)}", file=out)
    _show("ultrasolvable", is_ultrasolvable(G, args.aut_cap), out)
    autos = automorphisms_for_search(G, args.aut_cap)
    _show("ultrasolvable (steps normal)", is_A_solvable(G, autos, normal_in_group=True), out)
    _show("fully solvable", is_fully_solvable(G), out)
    _show("Aut supersolvable", aut_supersolvable(G, args.aut_cap), out)
    _show("ultrasolvable or odd x V", condition2(G, args.aut_cap), out)
    if G.is_abelian:
        inv = abelian_invariants(G)
        print(f"{'abelian invariants':<32} {inv}", file=out)
        print(f"{'Aut supersolvable by rule':<32} {abelian_aut_supersolvable_rule(inv)}", file=out)
    return 0


def cmd_verify_main(args, out=None) -> int:
    out = out or sys.stdout
    entries = select(ingest_catalog(args.catalog), max_order=args.max_order)
    records = verify_main(entries, aut_cap=args.aut_cap, workers=args.workers)
    if args.out:
        write_report(records, args.out)
    print(summary_table(records), file=out)
    return 0 if summarize(records).ok else 1


def cmd_verify_certificates(args, out=None) -> int:
    out = out or sys.stdout
    entries = ingest_catalog(args.catalog)
    records = read_report(args.report)
    failures = recheck_certificates(records, entries)
    stored = sum(1 for r in records for f in ("ultrasolvable", "fully_solvable", "aut_supersolvable", "condition2")
                 if getattr(r, f)["value"])
    for eid, name, reason in failures:
        print(f"FAIL {eid} {name}: {reason}", file=out)
    print(f"{stored} certificates re-checked, {len(failures)} failures", file=out)
    return 1 if failures else 0


def cmd_count(args, out=None) -> int:
    out = out or sys.stdout
    entries = ingest_catalog(args.catalog)
    print(count_predicate(entries, args.order, args.predicate), file=out)
    return 0


def cmd_lemma(args, out=None) -> int:
    out = out or sys.stdout
    entries = select(ingest_catalog(args.catalog), max_order=args.max_order)
    report = verify_lemma(entries, args.lemma, aut_cap=args.aut_cap, seed=args.seed)
    print(report.format(verbose=args.verbose), file=out)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ultrasolv", description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled subgroups")
    sub = parser.add_subparsers(dest="command", required=True)

    def catalog_arg(p):
        p.add_argument("--catalog", default=str(default_catalog_path()),
                       help="catalog file (default: the vendored small-groups catalog)")

    def cap_arg(p):
        p.add_argument("--aut-cap", type=int, default=DEFAULT_AUT_CAP,
                       help="largest automorphism group to build as a table (env ULTRASOLV_AUT_CAP)")

    verify = sub.add_parser("verify", help="verification runs")
    vsub = verify.add_subparsers(dest="mode", required=True)
    main = vsub.add_parser("main", help="check the Aut-supersolvability criterion group by group")
    catalog_arg(main)
    cap_arg(main)
    main.add_argument("--max-order", type=int)
    main.add_argument("--workers", type=int, default=1)
    main.add_argument("--out", help="write JSON-lines records here (summary beside it)")
    main.set_defaults(func=cmd_verify_main)
    certs = vsub.add_parser("certificates", help="re-check the certificates stored in a report")
    catalog_arg(certs)
    certs.add_argument("--report", required=True)
    certs.set_defaults(func=cmd_verify_certificates)

    count = sub.add_parser("count", help="count catalog groups of one order satisfying a predicate")
    catalog_arg(count)
    count.add_argument("--order", type=int, required=True)
    count.add_argument("--predicate", required=True, choices=sorted(PREDICATES))
    count.set_defaults(func=cmd_count)

    lemma = sub.add_parser("lemma", help="run one property suite over the catalog")
    lemma.add_argument("lemma", choices=list(LEMMAS))
    catalog_arg(lemma)
    cap_arg(lemma)
    lemma.add_argument("--max-order", type=int)
    lemma.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    lemma.add_argument("-v", "--verbose", action="store_true")
    lemma.set_defaults(func=cmd_lemma)

    classify = sub.add_parser("classify", help="all verdicts for one permutation group")
    classify.add_argument("--gens", required=True,
                          help='semicolon-separated permutations, e.g. "(0 1 2 3);(1 3)" or "1,2,3,0;0,3,2,1"')
    classify.add_argument("--degree", type=int)
    cap_arg(classify)
    classify.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
