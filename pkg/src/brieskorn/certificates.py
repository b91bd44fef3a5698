"""Statuses, rule identifiers, certificate trees, and their replay.

A certificate records, for one classified tuple, which rule fired, the
coordinate permutation the rule was applied under, the witnesses it
used, and sub-certificates for recursive rules.  Replay re-verifies the
arithmetic side condition of every node from scratch, independently of
any memo the classifier used to find the proof.

Wire format (lossless round trip, stable field names)::

    Certificate := {
      "rule":        <RuleId name>,
      "tuple":       [int, ...],            # exponents as classified
      "permutation": [int, ...],            # 1-based; slot k holds entry permutation[k]
      "witness":     Witness | null,
      "children":    [Certificate, ...],
      "status":      <Status name>
    }
    Witness := {
      "index":   int,                       # coordinate the rule acted on
      "tuple":   [int, ...],                # witness tuple
      "sibling": [int, ...],                # second tuple above a shared witness
      "subsets": [[int, ...], ...]          # removed index sets, one per child
    }                                       # (absent keys mean "not used")
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Any

from . import tuples as tp
from .errors import CertificateError
from .tuples import Exponents


class Status(enum.Enum):
    NON_RIGID = "NON_RIGID"
    RIGID = "RIGID"
    STABLY_RIGID = "STABLY_RIGID"
    UNKNOWN = "UNKNOWN"

    @property
    def implies_rigid(self) -> bool:
        """Stable rigidity counts as rigidity for all reporting purposes."""
        return self in (Status.RIGID, Status.STABLY_RIGID)


class RuleId(enum.Enum):
    NOT_IN_TN = "NOT_IN_TN"
    N3_T3 = "N3_T3"
    N3_STABLE = "N3_STABLE"
    LOW_SUM = "LOW_SUM"
    N4_COPRIME = "N4_COPRIME"
    N4_THREE_THREES = "N4_THREE_THREES"
    N4_EVEN_GCD = "N4_EVEN_GCD"
    COTYPE_GE_2_N4 = "COTYPE_GE_2_N4"
    EQUAL_EXPONENTS = "EQUAL_EXPONENTS"
    I_SUM = "I_SUM"
    COTYPE_GE_NMINUS2 = "COTYPE_GE_NMINUS2"
    RECURSIVE_SUBTUPLES = "RECURSIVE_SUBTUPLES"
    DESCEND = "DESCEND"
    TRANSFER = "TRANSFER"


@dataclass(frozen=True)
class Witness:
    index: int | None = None
    exponents: Exponents | None = None
    sibling: Exponents | None = None
    subsets: tuple[tuple[int, ...], ...] | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {}
        if self.index is not None:
            out["index"] = self.index
        if self.exponents is not None:
            out["tuple"] = list(self.exponents)
        if self.sibling is not None:
            out["sibling"] = list(self.sibling)
        if self.subsets is not None:
            out["subsets"] = [list(subset) for subset in self.subsets]
        return out


@dataclass(frozen=True)
class Certificate:
    rule: RuleId
    exponents: Exponents
    status: Status
    permutation: tuple[int, ...]
    witness: Witness | None = None
    children: tuple["Certificate", ...] = ()

    def to_dict(self) -> dict:
        return {
            "rule": self.rule.value,
            "tuple": list(self.exponents),
            "permutation": list(self.permutation),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "children": [child.to_dict() for child in self.children],
            "status": self.status.value,
        }


def certificate_to_json(certificate: Certificate, *, indent: int | None = None) -> str:
    """Canonical text form; compact with sorted keys unless ``indent`` given."""
    if indent is None:
        return json.dumps(certificate.to_dict(), sort_keys=True, separators=(",", ":"))
    return json.dumps(certificate.to_dict(), sort_keys=True, indent=indent)


def certificate_id(certificate: Certificate) -> str:
    """Stable content-derived identifier (used to key census sidecar files)."""
    digest = hashlib.sha256(certificate_to_json(certificate).encode("utf-8"))
    return digest.hexdigest()[:12]


def _int_list(raw: Any, what: str, path: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise CertificateError(f"{what} must be a list of integers, got {raw!r}", path)
    return tuple(raw)


def certificate_from_dict(raw: Any, path: str = "root") -> Certificate:
    if not isinstance(raw, dict):
        raise CertificateError(f"certificate node must be an object, got {type(raw).__name__}", path)
    missing = {"rule", "tuple", "permutation", "witness", "children", "status"} - raw.keys()
    if missing:
        raise CertificateError(f"missing fields: {sorted(missing)}", path)
    try:
        rule = RuleId(raw["rule"])
    except ValueError:
        raise CertificateError(f"unknown rule {raw['rule']!r}", path) from None
    try:
        status = Status(raw["status"])
    except ValueError:
        raise CertificateError(f"unknown status {raw['status']!r}", path) from None
    exponents = _int_list(raw["tuple"], "tuple", path)
    permutation = _int_list(raw["permutation"], "permutation", path)
    witness = None
    if raw["witness"] is not None:
        w = raw["witness"]
        if not isinstance(w, dict):
            raise CertificateError("witness must be an object or null", path)
        subsets = None
        if w.get("subsets") is not None:
            if not isinstance(w["subsets"], list):
                raise CertificateError("witness subsets must be a list of lists", path)
            subsets = tuple(_int_list(part, "witness subset", path) for part in w["subsets"])
        index = w.get("index")
        if index is not None and not isinstance(index, int):
            raise CertificateError("witness index must be an integer", path)
        witness = Witness(
            index=index,
            exponents=None if w.get("tuple") is None else _int_list(w["tuple"], "witness tuple", path),
            sibling=None if w.get("sibling") is None else _int_list(w["sibling"], "witness sibling", path),
            subsets=subsets,
        )
    if not isinstance(raw["children"], list):
        raise CertificateError("children must be a list", path)
    children = tuple(
        certificate_from_dict(child, f"{path}.children[{k}]")
        for k, child in enumerate(raw["children"])
    )
    return Certificate(rule, exponents, status, permutation, witness, children)


def certificate_from_json(text: str) -> Certificate:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"invalid JSON: {exc}") from None
    return certificate_from_dict(raw)


# --- replay ---------------------------------------------------------------


def _fail(message: str, path: str) -> None:
    raise CertificateError(message, path)


def _need_witness(node: Certificate, path: str) -> Witness:
    if node.witness is None:
        _fail(f"{node.rule.value} requires a witness", path)
    return node.witness


def _replay_node(node: Certificate, path: str) -> None:
    entries = node.exponents
    n = len(entries)
    if n < 3:
        _fail(f"classified tuples need length >= 3, got {n}", path)
    if any(not isinstance(v, int) or v < 1 for v in entries):
        _fail(f"entries must be positive integers: {entries!r}", path)
    if sorted(node.permutation) != list(range(1, n + 1)):
        _fail(f"invalid permutation {node.permutation!r}", path)
    permuted = tp.apply_permutation(entries, node.permutation)
    rule = node.rule
    derived: Status

    if rule is RuleId.NOT_IN_TN:
        if tp.in_tn(entries):
            _fail("tuple satisfies the candidate condition (every entry >= 2, at most one 2)", path)
        derived = Status.NON_RIGID
    elif rule in (RuleId.N3_T3, RuleId.N3_STABLE):
        if n != 3:
            _fail("three-entry rule on a tuple of different length", path)
        if not tp.in_tn(entries):
            _fail("tuple fails the candidate condition", path)
        total = tp.reciprocal_sum(entries)
        if rule is RuleId.N3_STABLE:
            if total > 1:
                _fail(f"reciprocal sum {total} exceeds 1", path)
            derived = Status.STABLY_RIGID
        else:
            if total <= 1:
                _fail(f"reciprocal sum {total} is <= 1; the stable rule applies instead", path)
            derived = Status.RIGID
    elif rule is RuleId.LOW_SUM:
        if tp.reciprocal_sum(entries) > Fraction(1, n - 2):
            _fail(f"reciprocal sum exceeds 1/{n - 2}", path)
        derived = Status.STABLY_RIGID
    elif rule is RuleId.N4_COPRIME:
        a, b, c, d = _permuted4(node, permuted, path)
        if gcd(a * b * c, d) != 1:
            _fail("fourth entry shares a factor with the product of the others", path)
        derived = Status.RIGID
    elif rule is RuleId.N4_THREE_THREES:
        a, b, c, _ = _permuted4(node, permuted, path)
        if (a, b, c) != (3, 3, 3):
            _fail("first three permuted entries are not all 3", path)
        derived = Status.RIGID
    elif rule is RuleId.N4_EVEN_GCD:
        a, b, c, d = _permuted4(node, permuted, path)
        if a != 2 or min(b, c, d) < 3 or b % 2 or gcd(b, c) < 3 or gcd(d, lcm(b, c)) != 2:
            _fail("even-gcd side conditions fail for the recorded permutation", path)
        derived = Status.RIGID
    elif rule is RuleId.COTYPE_GE_2_N4:
        if n != 4:
            _fail("rule applies to length-4 tuples only", path)
        if not tp.in_tn(entries):
            _fail("tuple fails the candidate condition", path)
        if tp.cotype(entries) < 2:
            _fail(f"cotype {tp.cotype(entries)} < 2", path)
        derived = Status.RIGID
    elif rule is RuleId.EQUAL_EXPONENTS:
        if n < 4:
            _fail("rule applies to tuples of length >= 4", path)
        if len(set(entries)) != 1:
            _fail("entries are not all equal", path)
        if entries[0] < n:
            _fail(f"common exponent {entries[0]} is below the length {n}", path)
        derived = Status.RIGID
    elif rule is RuleId.I_SUM:
        stable = tp.lcm_stable_indices(entries)
        if tp.reciprocal_sum(entries, stable) >= Fraction(1, n - 2):
            _fail(f"lcm-stable reciprocal sum is not below 1/{n - 2}", path)
        derived = Status.RIGID
    elif rule is RuleId.COTYPE_GE_NMINUS2:
        if n < 4:
            _fail("rule applies to tuples of length >= 4", path)
        if not tp.in_tn(entries):
            _fail("tuple fails the candidate condition", path)
        if tp.cotype(entries) < n - 2:
            _fail(f"cotype {tp.cotype(entries)} < {n - 2}", path)
        derived = Status.RIGID
    elif rule is RuleId.RECURSIVE_SUBTUPLES:
        derived = _replay_recursive(node, path)
    elif rule is RuleId.DESCEND:
        derived = _replay_descend(node, path)
    elif rule is RuleId.TRANSFER:
        derived = _replay_transfer(node, path)
    else:  # pragma: no cover - exhaustive over RuleId
        _fail(f"no replay check for rule {rule!r}", path)

    if node.status is not derived:
        _fail(f"recorded status {node.status.value} but side conditions derive {derived.value}", path)
    # Recursive rules replay their children themselves; everything else
    # must be a leaf.
    if rule not in (RuleId.RECURSIVE_SUBTUPLES, RuleId.DESCEND, RuleId.TRANSFER) and node.children:
        _fail(f"{rule.value} must not have children", path)


def _permuted4(node: Certificate, permuted: Exponents, path: str) -> Exponents:
    if len(node.exponents) != 4:
        _fail("rule applies to length-4 tuples only", path)
    if not tp.in_tn(node.exponents):
        _fail("tuple fails the candidate condition", path)
    return permuted


def _replay_recursive(node: Certificate, path: str) -> Status:
    entries = node.exponents
    n = len(entries)
    if n < 4:
        _fail("recursive rule applies to tuples of length >= 4", path)
    critical = sorted(tp.lcm_critical_indices(entries))
    if not critical:
        _fail("no lcm-critical indices: recursive rule cannot apply", path)
    size = min(len(critical) - 1, n - 3)
    if size < 1:
        _fail("degenerate subset size: recursive rule must not fire", path)
    required = tuple(itertools.combinations(critical, size))
    witness = _need_witness(node, path)
    if witness.subsets != required:
        _fail(
            f"witness subsets {witness.subsets!r} differ from the required "
            f"size-{size} subsets of {critical}",
            path,
        )
    if len(node.children) != len(required):
        _fail(f"expected {len(required)} children, found {len(node.children)}", path)
    for k, (subset, child) in enumerate(zip(required, node.children)):
        child_path = f"{path}.children[{k}]"
        expected = tp.subtuple(entries, subset)
        if child.exponents != expected:
            _fail(f"child tuple {child.exponents!r} is not the subtuple {expected!r}", child_path)
        if not child.status.implies_rigid:
            _fail(f"child status {child.status.value} does not establish rigidity", child_path)
        _replay_node(child, child_path)
    return Status.RIGID


def _replay_descend(node: Certificate, path: str) -> Status:
    witness = _need_witness(node, path)
    if witness.index is None or witness.exponents is None:
        _fail("descend witness needs an index and a witness tuple", path)
    if len(node.children) != 1:
        _fail("descend carries exactly one child", path)
    child = node.children[0]
    if child.exponents != witness.exponents:
        _fail("child tuple differs from the witness tuple", path)
    if not tp.lt_at(witness.exponents, node.exponents, witness.index):
        _fail("witness tuple is not strictly below in the coordinate divisor order", path)
    if not child.status.implies_rigid:
        _fail(f"child status {child.status.value} does not establish rigidity", path)
    _replay_node(child, f"{path}.children[0]")
    return Status.RIGID


def _replay_transfer(node: Certificate, path: str) -> Status:
    witness = _need_witness(node, path)
    if witness.index is None or witness.exponents is None or witness.sibling is None:
        _fail("transfer witness needs an index, a shared lower tuple and a sibling", path)
    if len(node.children) != 1:
        _fail("transfer carries exactly one child", path)
    child = node.children[0]
    if child.exponents != witness.sibling:
        _fail("child tuple differs from the recorded sibling", path)
    if not tp.lt_at(witness.exponents, node.exponents, witness.index):
        _fail("shared tuple is not strictly below the classified tuple", path)
    if not tp.lt_at(witness.exponents, witness.sibling, witness.index):
        _fail("shared tuple is not strictly below the sibling", path)
    _replay_node(child, f"{path}.children[0]")
    if child.status.implies_rigid:
        return Status.RIGID
    if child.status is Status.NON_RIGID:
        return Status.NON_RIGID
    _fail(f"sibling status {child.status.value} transfers nothing", path)
    raise AssertionError("unreachable")


def verify_certificate(certificate: Certificate) -> None:
    """Re-check every arithmetic side condition; raises CertificateError."""
    _replay_node(certificate, "root")


def replay(certificate: Certificate) -> bool:
    """True when the whole certificate tree replays successfully."""
    try:
        verify_certificate(certificate)
    except CertificateError:
        return False
    return True
