"""Exhaustive classification of tuple universes.

Enumerates all non-decreasing tuples of a given length over an exponent
range (one representative per permutation class), classifies each one,
and aggregates counts per status and per deciding rule plus the frontier
of UNKNOWN tuples.  Output is deterministic: rows come in lexicographic
order of the sorted tuples and are independent of the worker count, so
two runs produce byte-identical files.

File outputs::

    census.csv          tuple;status;rule;cotype;in_Tn;reciprocal_sum;certificate_id
    summary.txt         structured text block with the histograms
    certificates.json   sidecar mapping certificate_id -> certificate
"""

from __future__ import annotations

import json
import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

from . import tuples as tp
from .certificates import Certificate, RuleId, Status, certificate_id
from .engine import Budget, Classification, KnowledgeBase, classify
from .errors import InputError
from .tuples import Exponents

CSV_HEADER = "tuple;status;rule;cotype;in_Tn;reciprocal_sum;certificate_id"


@dataclass(frozen=True)
class CensusSpec:
    """Universe description plus budget overrides."""

    length: int
    max_exponent: int
    min_exponent: int = 1
    budget: Budget = field(default_factory=Budget)

    def __post_init__(self):
        if self.length < 3:
            raise InputError(f"census tuples need length >= 3, got {self.length}")
        if self.min_exponent < 1:
            raise InputError(f"minimum exponent must be >= 1, got {self.min_exponent}")
        if self.min_exponent > self.max_exponent:
            raise InputError(
                f"empty exponent range [{self.min_exponent}, {self.max_exponent}]"
            )


@dataclass(frozen=True)
class CensusRow:
    exponents: Exponents
    status: Status
    rule: RuleId | None
    cotype: int
    in_tn: bool
    reciprocal_sum: Fraction
    certificate_id: str
    budget_hit: bool
    certificate: Certificate | None

    def csv_line(self) -> str:
        return ";".join(
            (
                ",".join(str(v) for v in self.exponents),
                self.status.value,
                "" if self.rule is None else self.rule.value,
                str(self.cotype),
                "true" if self.in_tn else "false",
                str(self.reciprocal_sum),
                self.certificate_id,
            )
        )


@dataclass(frozen=True)
class CensusSummary:
    spec: CensusSpec
    row_count: int
    status_counts: tuple[tuple[Status, int], ...]
    rule_counts: tuple[tuple[RuleId, int], ...]
    unknown_budget_hits: int

    def render(self) -> str:
        lines = [
            f"census length={self.spec.length} "
            f"exponents={self.spec.min_exponent}..{self.spec.max_exponent}",
            f"budget depth={self.spec.budget.max_depth} "
            f"witnesses={self.spec.budget.max_divisor_witnesses} "
            f"siblings={self.spec.budget.max_transfer_siblings}",
            f"rows: {self.row_count}",
            "status counts:",
        ]
        lines += [f"  {status.value}: {count}" for status, count in self.status_counts]
        lines.append("rule counts:")
        lines += [f"  {rule.value}: {count}" for rule, count in self.rule_counts]
        lines.append(f"unknown rows hitting the search budget: {self.unknown_budget_hits}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CensusResult:
    spec: CensusSpec
    rows: tuple[CensusRow, ...]
    summary: CensusSummary

    def csv_text(self) -> str:
        return "\n".join([CSV_HEADER, *(row.csv_line() for row in self.rows)]) + "\n"

    def certificates_json(self) -> str:
        sidecar = {
            row.certificate_id: row.certificate.to_dict()
            for row in self.rows
            if row.certificate is not None
        }
        return json.dumps(sidecar, sort_keys=True, indent=2) + "\n"


def enumerate_universe(spec: CensusSpec):
    """Non-decreasing tuples over the range, in lexicographic order."""
    values = range(spec.min_exponent, spec.max_exponent + 1)
    yield from combinations_with_replacement(values, spec.length)


def universe_size(spec: CensusSpec) -> int:
    """Closed form: multiset coefficient of the enumeration."""
    from math import comb

    choices = spec.max_exponent - spec.min_exponent + 1
    return comb(choices + spec.length - 1, spec.length)


def _build_row(entries: Exponents, outcome: Classification) -> CensusRow:
    certificate = outcome.certificate
    return CensusRow(
        exponents=entries,
        status=outcome.status,
        rule=None if certificate is None else certificate.rule,
        cotype=tp.cotype(entries),
        in_tn=tp.in_tn(entries),
        reciprocal_sum=tp.reciprocal_sum(entries),
        certificate_id="" if certificate is None else certificate_id(certificate),
        budget_hit=outcome.budget_hit,
        certificate=certificate,
    )


def _classify_chunk(args: tuple[tuple[Exponents, ...], Budget]) -> list[CensusRow]:
    chunk, budget = args
    kb = KnowledgeBase(budget)
    return [_build_row(entries, classify(entries, kb)) for entries in chunk]


def run_census(spec: CensusSpec, workers: int = 1) -> CensusResult:
    """Classify the whole universe.

    With ``workers`` > 1 the universe is split into contiguous chunks
    handled by separate processes with private memo tables; because
    classification is a pure function of tuple and budget, the merged
    rows are identical to a serial run.
    """
    universe = list(enumerate_universe(spec))
    if workers <= 1 or len(universe) < 2:
        rows = _classify_chunk((tuple(universe), spec.budget))
    else:
        workers = min(workers, len(universe))
        step = (len(universe) + workers - 1) // workers
        chunks = [
            (tuple(universe[i : i + step]), spec.budget)
            for i in range(0, len(universe), step)
        ]
        with multiprocessing.get_context("fork").Pool(len(chunks)) as pool:
            parts = pool.map(_classify_chunk, chunks)
        rows = [row for part in parts for row in part]
    return CensusResult(spec=spec, rows=tuple(rows), summary=_summarize(spec, rows))


def _summarize(spec: CensusSpec, rows) -> CensusSummary:
    status_counts = {status: 0 for status in Status}
    rule_counts: dict[RuleId, int] = {}
    budget_hits = 0
    for row in rows:
        status_counts[row.status] += 1
        if row.rule is not None:
            rule_counts[row.rule] = rule_counts.get(row.rule, 0) + 1
        if row.status is Status.UNKNOWN and row.budget_hit:
            budget_hits += 1
    return CensusSummary(
        spec=spec,
        row_count=len(rows),
        status_counts=tuple((s, status_counts[s]) for s in Status),
        rule_counts=tuple(sorted(rule_counts.items(), key=lambda kv: kv[0].value)),
        unknown_budget_hits=budget_hits,
    )


def write_census_files(result: CensusResult, out_dir) -> dict[str, Path]:
    """Write census.csv, summary.txt and certificates.json under ``out_dir``."""
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "csv": directory / "census.csv",
        "summary": directory / "summary.txt",
        "certificates": directory / "certificates.json",
    }
    paths["csv"].write_text(result.csv_text(), encoding="utf-8")
    paths["summary"].write_text(result.summary.render(), encoding="utf-8")
    paths["certificates"].write_text(result.certificates_json(), encoding="utf-8")
    return paths
