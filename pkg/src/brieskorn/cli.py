"""Command-line interface.

Subcommands: ``classify``, ``invariants``, ``census``, ``proj-classes``.
Numbers are always printed exactly (integers and p/q rationals, never
floats).  Exit code 0 covers every successful run including UNKNOWN
verdicts (an open case is an answer, not a failure); exit code 2 is
reserved for usage and input errors.

Search budgets default to depth=6, witnesses=32, siblings=16; the
``BRIESKORN_BUDGET`` environment variable (e.g. ``depth=8,siblings=24``)
overrides the defaults and the ``--depth/--max-witnesses/--max-siblings``
flags override both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import tuples as tp
from .census import CensusSpec, run_census, write_census_files
from .certificates import Certificate
from .engine import Budget, KnowledgeBase, classify, kernel_degree_bound
from .errors import BrieskornError, InputError
from .proj import proj_classes

BUDGET_ENV = "BRIESKORN_BUDGET"
_BUDGET_KEYS = {"depth": "max_depth", "witnesses": "max_divisor_witnesses",
                "siblings": "max_transfer_siblings"}


def _budget_from_env() -> dict:
    raw = os.environ.get(BUDGET_ENV, "").strip()
    if not raw:
        return {}
    overrides = {}
    for part in raw.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in _BUDGET_KEYS or not value.strip().isdigit():
            raise InputError(
                f"cannot parse {BUDGET_ENV}={raw!r}; expected e.g. depth=6,witnesses=32,siblings=16"
            )
        overrides[_BUDGET_KEYS[key]] = int(value)
    return overrides


def _build_budget(args) -> Budget:
    overrides = _budget_from_env()
    if args.depth is not None:
        overrides["max_depth"] = args.depth
    if args.max_witnesses is not None:
        overrides["max_divisor_witnesses"] = args.max_witnesses
    if args.max_siblings is not None:
        overrides["max_transfer_siblings"] = args.max_siblings
    return Budget(**overrides)


def _parse_exponents(raw: list[str]):
    values = []
    for token in raw:
        try:
            values.append(int(token))
        except ValueError:
            raise InputError(f"exponents must be integers, got {token!r}") from None
    return tp.as_exponents(values, minimum_length=3)


def _format_tuple(entries) -> str:
    return "(" + ",".join(str(v) for v in entries) + ")"


def _render_certificate(cert: Certificate, indent: int = 0) -> list[str]:
    pad = "  " * indent
    line = f"{pad}{cert.rule.value} {_format_tuple(cert.exponents)} -> {cert.status.value}"
    details = []
    if cert.permutation != tp.identity_permutation(len(cert.exponents)):
        details.append("permutation=" + _format_tuple(cert.permutation))
    witness = cert.witness
    if witness is not None:
        if witness.index is not None:
            details.append(f"index={witness.index}")
        if witness.exponents is not None:
            details.append("witness=" + _format_tuple(witness.exponents))
        if witness.sibling is not None:
            details.append("sibling=" + _format_tuple(witness.sibling))
        if witness.subsets is not None:
            details.append("subsets=" + " ".join("{" + ",".join(map(str, s)) + "}" for s in witness.subsets))
    if details:
        line += "  [" + ", ".join(details) + "]"
    lines = [line]
    for child in cert.children:
        lines.extend(_render_certificate(child, indent + 1))
    return lines


def _cmd_classify(args) -> int:
    entries = _parse_exponents(args.exponents)
    kb = KnowledgeBase(_build_budget(args))
    outcome = classify(entries, kb)
    cert = outcome.certificate
    if args.format == "structured":
        payload = {
            "tuple": list(entries),
            "status": outcome.status.value,
            "rule": None if cert is None else cert.rule.value,
            "budget_hit": outcome.budget_hit,
            "certificate": None if cert is None else cert.to_dict(),
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
        return 0
    if args.format == "csv":
        from .census import CSV_HEADER, _build_row

        print(CSV_HEADER)
        print(_build_row(entries, outcome).csv_line())
        return 0
    print(f"tuple: {_format_tuple(entries)}")
    print(f"status: {outcome.status.value}")
    if cert is None:
        print("rule: none (no criterion in the catalogue decides this tuple)")
        if outcome.budget_hit:
            print("note: the search was truncated by the budget")
    else:
        print(f"rule: {cert.rule.value}")
        print("certificate:")
        for line in _render_certificate(cert, indent=1):
            print(line)
    return 0


def _cmd_invariants(args) -> int:
    entries = _parse_exponents(args.exponents)
    report = tp.invariant_report(entries)
    kb = KnowledgeBase(_build_budget(args))
    bound = kernel_degree_bound(entries, kb) if len(entries) >= 4 else None
    if args.format == "structured":
        payload = report.to_dict()
        if bound is not None:
            payload["kernel_degree_bound"] = {
                "value": bound.value,
                "rigid_critical": sorted(bound.rigid_critical),
                "undecided": sorted(bound.undecided),
                "partial": bound.is_partial,
            }
        print(json.dumps(payload, sort_keys=True, indent=2))
        return 0
    def show_set(indices):
        return "{" + ",".join(str(i) for i in sorted(indices)) + "}"

    print(f"tuple: {_format_tuple(report.exponents)}")
    print(f"lcm: {report.total_lcm}")
    print(f"gcd: {report.total_gcd}")
    print(f"normalization: {_format_tuple(report.normalization)}")
    print(f"degrees (lcm/entry): {_format_tuple(report.degrees)}")
    print(f"type: {report.type}   gcd-critical indices: {show_set(report.gcd_critical)}")
    print(f"cotype: {report.cotype}   lcm-critical indices: {show_set(report.lcm_critical)}")
    print(f"lcm-stable indices: {show_set(report.lcm_stable)}")
    print(f"coordinate gcds: {_format_tuple(report.coordinate_gcds)}")
    print(f"in_Tn: {'true' if report.in_tn else 'false'}")
    print(f"lcm drop over critical indices: {report.critical_lcm_drop}")
    print(f"reciprocal sum: {report.reciprocal_sum}")
    if bound is not None:
        suffix = ""
        if bound.is_partial:
            suffix = (
                "  (divides the true bound; undecided subtuples at "
                + show_set(bound.undecided)
                + ")"
            )
        print(f"kernel degree bound: {bound.value}{suffix}")
    return 0


def _cmd_census(args) -> int:
    spec = CensusSpec(
        length=args.n,
        min_exponent=args.min,
        max_exponent=args.max,
        budget=_build_budget(args),
    )
    result = run_census(spec, workers=args.workers)
    paths = write_census_files(result, args.out)
    print(result.summary.render(), end="")
    print(f"csv: {paths['csv']}")
    print(f"summary: {paths['summary']}")
    print(f"certificates: {paths['certificates']}")
    return 0


def _cmd_proj_classes(args) -> int:
    spec = CensusSpec(length=args.n, min_exponent=args.min, max_exponent=args.max)
    from .census import enumerate_universe

    universe = list(enumerate_universe(spec))
    kb = KnowledgeBase(_build_budget(args))
    classes = proj_classes(universe, kb)
    if args.format == "structured":
        print(json.dumps([cls.to_dict() for cls in classes], sort_keys=True, indent=2))
        return 0
    print(
        f"{len(classes)} classes over {len(universe)} tuples "
        f"(length {args.n}, exponents {args.min}..{args.max}; "
        "classes are relative to this universe)"
    )
    for number, cls in enumerate(classes, start=1):
        flag = "mixed" if cls.mixed else "uniform"
        print(f"class {number} ({flag}, {len(cls.members)} members):")
        for member, status in cls.statuses:
            print(f"  {_format_tuple(member)}: {status.value}")
        for edge in cls.edges:
            print(
                f"  edge {_format_tuple(edge.source)} -> {_format_tuple(edge.target)}"
                f"  index={edge.index} veronese={edge.veronese_index}"
            )
    return 0


def _add_budget_flags(parser) -> None:
    parser.add_argument("--depth", type=int, default=None, help="max recursion depth (default 6)")
    parser.add_argument(
        "--max-witnesses", type=int, default=None,
        help="max divisor witnesses per coordinate for descend (default 32)",
    )
    parser.add_argument(
        "--max-siblings", type=int, default=None,
        help="max transfer siblings per coordinate (default 16)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brieskorn",
        description="Classify exponent tuples of Pham-Brieskorn rings as rigid, "
        "stably rigid, non-rigid or unknown, with replayable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify one tuple")
    p_classify.add_argument("exponents", nargs="+", help="at least three positive integers")
    p_classify.add_argument("--format", choices=("human", "structured", "csv"), default="human")
    _add_budget_flags(p_classify)
    p_classify.set_defaults(handler=_cmd_classify)

    p_inv = sub.add_parser("invariants", help="print the arithmetic invariants of one tuple")
    p_inv.add_argument("exponents", nargs="+", help="at least three positive integers")
    p_inv.add_argument("--format", choices=("human", "structured"), default="human")
    _add_budget_flags(p_inv)
    p_inv.set_defaults(handler=_cmd_invariants)

    p_census = sub.add_parser("census", help="classify a whole universe and write files")
    p_census.add_argument("--n", type=int, required=True, help="tuple length (>= 3)")
    p_census.add_argument("--max", type=int, required=True, help="largest exponent")
    p_census.add_argument("--min", type=int, default=1, help="smallest exponent (default 1)")
    p_census.add_argument("--out", default="census-out", help="output directory")
    p_census.add_argument("--workers", type=int, default=1, help="worker processes")
    _add_budget_flags(p_census)
    p_census.set_defaults(handler=_cmd_census)

    p_proj = sub.add_parser(
        "proj-classes", help="group a universe into projective-cone isomorphism classes"
    )
    p_proj.add_argument("--n", type=int, required=True, help="tuple length (>= 3)")
    p_proj.add_argument("--max", type=int, required=True, help="largest exponent")
    p_proj.add_argument("--min", type=int, default=1, help="smallest exponent (default 1)")
    p_proj.add_argument("--format", choices=("human", "structured"), default="human")
    _add_budget_flags(p_proj)
    p_proj.set_defaults(handler=_cmd_proj_classes)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BrieskornError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
