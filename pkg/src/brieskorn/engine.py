"""Rigidity classifier for exponent tuples.

A fixed catalogue of arithmetic rules is tried in a fixed priority order;
the cheap purely-arithmetic rules run first, then the recursive search
rules (subtuple recursion, descending along the coordinate divisor order,
and transfer across tuples sharing a strict lower bound).  The search is
budgeted (recursion depth, divisor witnesses per coordinate, transfer
siblings per coordinate) and memoized on the sorted tuple together with
the remaining depth, which makes every answer a pure function of the
tuple and the budget: warm and cold caches, any call order, and any
number of census workers all produce identical results.

``UNKNOWN`` is a first-class answer, not an error: it means no
implemented criterion decides the tuple within the budget.  Known open
cases (such as (2,3,3,4)) must stay UNKNOWN.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import tuples as tp
from .certificates import Certificate, RuleId, Status, Witness
from .errors import InputError, SoundnessError
from .tuples import Exponents

#: Firing order of the rule catalogue (first match wins).
RULE_PRIORITY = (
    RuleId.NOT_IN_TN,
    RuleId.N3_T3,
    RuleId.N3_STABLE,
    RuleId.LOW_SUM,
    RuleId.N4_COPRIME,
    RuleId.N4_THREE_THREES,
    RuleId.N4_EVEN_GCD,
    RuleId.COTYPE_GE_2_N4,
    RuleId.EQUAL_EXPONENTS,
    RuleId.COTYPE_GE_NMINUS2,
    RuleId.I_SUM,
    RuleId.RECURSIVE_SUBTUPLES,
    RuleId.DESCEND,
    RuleId.TRANSFER,
)

_PERMS4 = tuple(itertools.permutations((1, 2, 3, 4)))

# Safety cap on the scan for admissible transfer multipliers; admissible
# values are unbounded (fresh primes always qualify), so the budget is
# what actually stops the scan.
_SIBLING_SCAN_LIMIT = 100_000


@dataclass(frozen=True)
class Budget:
    """Search limits for the recursive rules."""

    max_depth: int = 6
    max_divisor_witnesses: int = 32
    max_transfer_siblings: int = 16

    def __post_init__(self):
        if self.max_depth < 0 or self.max_divisor_witnesses < 1 or self.max_transfer_siblings < 1:
            raise InputError(f"invalid budget {self!r}")


@dataclass(frozen=True)
class Classification:
    """Outcome of classifying one tuple.

    ``certificate`` is None exactly when the status is UNKNOWN.
    ``budget_hit`` marks UNKNOWN answers whose search was truncated by
    the budget (a larger budget might decide them).
    """

    status: Status
    certificate: Certificate | None
    budget_hit: bool = False


class KnowledgeBase:
    """Memo table keyed by (sorted tuple, remaining depth), plus budget.

    Sorting the key is valid because the defining polynomial is symmetric
    in the (variable, exponent) pairs, so every status is invariant under
    permuting coordinates.  Keying by remaining depth keeps the memoized
    answer equal to the cold-cache answer at the same depth, which is
    what makes census output independent of worker count and call order.
    Entries are never overwritten, so a stronger status is never
    downgraded.  All writers compute identical values for a key, so
    concurrent use is last-write-wins on identical data.
    """

    def __init__(self, budget: Budget | None = None):
        self.budget = budget or Budget()
        self._memo: dict[tuple[Exponents, int], Classification] = {}
        self._decided: dict[Exponents, bool] = {}  # canonical -> implies_rigid

    def __len__(self) -> int:
        return len(self._memo)

    def lookup(self, key: tuple[Exponents, int]) -> Classification | None:
        return self._memo.get(key)

    def store(self, key: tuple[Exponents, int], result: Classification) -> None:
        if result.status is not Status.UNKNOWN:
            self._register(key[0], result.status)
        self._memo.setdefault(key, result)

    def _register(self, canonical: Exponents, status: Status) -> None:
        rigid = status.implies_rigid
        known = self._decided.setdefault(canonical, rigid)
        if known != rigid:
            raise SoundnessError(
                f"contradictory statuses derived for {canonical}: "
                f"{'rigid' if known else 'non-rigid'} and {status.value}"
            )


def classify(exponents, kb: KnowledgeBase | None = None) -> Classification:
    """Classify a tuple (length >= 3, positive entries).

    Deterministic: rules fire in :data:`RULE_PRIORITY` order and the
    first match wins; UNKNOWN is returned when nothing fires within the
    budget.
    """
    entries = tp.as_exponents(exponents, minimum_length=3)
    if kb is None:
        kb = KnowledgeBase()
    return _decide(entries, kb.budget.max_depth, kb)


def _decide(entries: Exponents, depth: int, kb: KnowledgeBase) -> Classification:
    key = (tuple(sorted(entries)), depth)
    cached = kb.lookup(key)
    if cached is not None:
        if cached.certificate is None or cached.certificate.exponents == entries:
            return cached
        # Same canonical tuple, different coordinate order: rebuild the
        # certificate for this order (children resolve via the memo) so
        # that certificates always root at the tuple as classified.
        result = _run_cascade(entries, depth, kb)
        if result.status is not cached.status:  # pragma: no cover - permutation invariance
            raise SoundnessError(
                f"status for {entries} changed under reordering: "
                f"{cached.status.value} vs {result.status.value}"
            )
        return result
    result = _run_cascade(entries, depth, kb)
    kb.store(key, result)
    return result


def _run_cascade(entries: Exponents, depth: int, kb: KnowledgeBase) -> Classification:
    for rule in (
        _not_in_tn,
        _n3,
        _low_sum,
        _collection,
        _equal_exponents,
        _cotype_high,
        _i_sum,
    ):
        certificate = rule(entries)
        if certificate is not None:
            _assert_sound(entries, certificate)
            return Classification(certificate.status, certificate)
    if depth <= 0:
        return Classification(Status.UNKNOWN, None, _recursion_available(entries))
    truncated = False
    for rule in (_recursive_subtuples, _descend, _transfer):
        certificate, rule_truncated = rule(entries, depth, kb)
        truncated |= rule_truncated
        if certificate is not None:
            _assert_sound(entries, certificate)
            return Classification(certificate.status, certificate)
    return Classification(Status.UNKNOWN, None, truncated)


def _assert_sound(entries: Exponents, certificate: Certificate) -> None:
    # Mutual exclusion of the two status families: a non-rigid verdict can
    # only come from the candidate-set test (or transfer thereof), and
    # every rigid-family rule implies membership in the candidate set.
    if certificate.status is Status.NON_RIGID:
        if certificate.rule not in (RuleId.NOT_IN_TN, RuleId.TRANSFER):
            raise SoundnessError(
                f"rule {certificate.rule.value} may not derive NON_RIGID for {entries}"
            )
    elif not tp.in_tn(entries):
        raise SoundnessError(
            f"rule {certificate.rule.value} derived a rigid status for {entries}, "
            "which fails the necessary candidate condition"
        )


def _recursion_available(entries: Exponents) -> bool:
    # Descend and transfer both act on lcm-critical coordinates, so the
    # recursive layer has candidates exactly when one exists.
    return bool(tp.lcm_critical_indices(entries))


def _identity(entries: Exponents) -> tuple[int, ...]:
    return tp.identity_permutation(len(entries))


def _replace(entries: Exponents, index: int, value: int) -> Exponents:
    return entries[: index - 1] + (value,) + entries[index:]


# --- non-recursive rules ----------------------------------------------------


def _not_in_tn(entries: Exponents) -> Certificate | None:
    if tp.in_tn(entries):
        return None
    return Certificate(RuleId.NOT_IN_TN, entries, Status.NON_RIGID, _identity(entries))


def _n3(entries: Exponents) -> Certificate | None:
    if len(entries) != 3:
        return None
    if not tp.in_tn(entries):
        # Unreachable after _not_in_tn in the cascade; kept for standalone use.
        return Certificate(RuleId.NOT_IN_TN, entries, Status.NON_RIGID, _identity(entries))
    if tp.reciprocal_sum(entries) <= 1:
        return Certificate(RuleId.N3_STABLE, entries, Status.STABLY_RIGID, _identity(entries))
    return Certificate(RuleId.N3_T3, entries, Status.RIGID, _identity(entries))


def _low_sum(entries: Exponents) -> Certificate | None:
    if tp.reciprocal_sum(entries) > Fraction(1, len(entries) - 2):
        return None
    return Certificate(RuleId.LOW_SUM, entries, Status.STABLY_RIGID, _identity(entries))


def _case_coprime(p: Exponents) -> bool:
    return gcd(p[0] * p[1] * p[2], p[3]) == 1


def _case_three_threes(p: Exponents) -> bool:
    return p[0] == p[1] == p[2] == 3


def _case_even_gcd(p: Exponents) -> bool:
    a, b, c, d = p
    return (
        a == 2
        and min(b, c, d) >= 3
        and b % 2 == 0
        and gcd(b, c) >= 3
        and gcd(d, b * c // gcd(b, c)) == 2
    )


def _collection(entries: Exponents) -> Certificate | None:
    """Length-4 catalogue; each case is tried over all coordinate
    permutations and the firing permutation is recorded."""
    if len(entries) != 4 or not tp.in_tn(entries):
        return None
    for rule_id, case in (
        (RuleId.N4_COPRIME, _case_coprime),
        (RuleId.N4_THREE_THREES, _case_three_threes),
        (RuleId.N4_EVEN_GCD, _case_even_gcd),
    ):
        for permutation in _PERMS4:
            if case(tp.apply_permutation(entries, permutation)):
                return Certificate(rule_id, entries, Status.RIGID, permutation)
    if tp.cotype(entries) >= 2:
        return Certificate(RuleId.COTYPE_GE_2_N4, entries, Status.RIGID, _identity(entries))
    return None


def _equal_exponents(entries: Exponents) -> Certificate | None:
    n = len(entries)
    if n < 4 or len(set(entries)) != 1 or entries[0] < n:
        return None
    return Certificate(RuleId.EQUAL_EXPONENTS, entries, Status.RIGID, _identity(entries))


def _cotype_high(entries: Exponents) -> Certificate | None:
    n = len(entries)
    if n < 4 or not tp.in_tn(entries) or tp.cotype(entries) < n - 2:
        return None
    return Certificate(RuleId.COTYPE_GE_NMINUS2, entries, Status.RIGID, _identity(entries))


def _i_sum(entries: Exponents) -> Certificate | None:
    stable = tp.lcm_stable_indices(entries)
    if tp.reciprocal_sum(entries, stable) >= Fraction(1, len(entries) - 2):
        return None
    return Certificate(RuleId.I_SUM, entries, Status.RIGID, _identity(entries))


# --- recursive rules --------------------------------------------------------


def _recursive_subtuples(
    entries: Exponents, depth: int, kb: KnowledgeBase
) -> tuple[Certificate | None, bool]:
    """Fires when every size-m removal inside the lcm-critical set leaves a
    rigid subtuple, m = min(#critical - 1, n - 3); degenerate m = 0 never
    fires."""
    n = len(entries)
    if n < 4:
        return None, False
    critical = sorted(tp.lcm_critical_indices(entries))
    if not critical:
        return None, False
    size = min(len(critical) - 1, n - 3)
    if size < 1:
        return None, False
    subsets = tuple(itertools.combinations(critical, size))
    children = []
    for subset in subsets:
        result = _decide(tp.subtuple(entries, subset), depth - 1, kb)
        if not result.status.implies_rigid:
            return None, result.status is Status.UNKNOWN and result.budget_hit
        children.append(result.certificate)
    certificate = Certificate(
        RuleId.RECURSIVE_SUBTUPLES,
        entries,
        Status.RIGID,
        _identity(entries),
        Witness(subsets=subsets),
        tuple(children),
    )
    return certificate, False


def _descend(
    entries: Exponents, depth: int, kb: KnowledgeBase
) -> tuple[Certificate | None, bool]:
    """Replaces one critical coordinate by a smaller compatible divisor and
    inherits rigidity from below (one-directional, so only RIGID comes
    back up)."""
    truncated = False
    for index in sorted(tp.lcm_critical_indices(entries)):
        value = entries[index - 1]
        floor = tp.coordinate_gcd(entries, index)
        candidates = [d for d in tp.divisors(value) if d != value and d % floor == 0]
        if len(candidates) > kb.budget.max_divisor_witnesses:
            candidates = candidates[: kb.budget.max_divisor_witnesses]
            truncated = True
        for smaller in candidates:
            witness_tuple = _replace(entries, index, smaller)
            result = _decide(witness_tuple, depth - 1, kb)
            if result.status.implies_rigid:
                certificate = Certificate(
                    RuleId.DESCEND,
                    entries,
                    Status.RIGID,
                    _identity(entries),
                    Witness(index=index, exponents=witness_tuple),
                    (result.certificate,),
                )
                return certificate, False
            truncated |= result.status is Status.UNKNOWN and result.budget_hit
    return None, truncated


def _smallest_new_prime(value: int) -> int:
    """Smallest prime that does not divide ``value``."""

    def is_prime(m: int) -> bool:
        if m < 4:
            return m >= 2
        if m % 2 == 0:
            return False
        d = 3
        while d * d <= m:
            if m % d == 0:
                return False
            d += 2
        return True

    p = 2
    while True:
        if is_prime(p) and value % p:
            return p
        p += 1


def _transfer_siblings(entries: Exponents, index: int, budget: Budget) -> list[int]:
    """Admissible replacement values at ``index``: multiples of the
    coordinate gcd g other than g itself whose gcd with the omitted lcm is
    exactly g.  Smallest first, capped by the budget, plus one fresh-prime
    value g*p with p the smallest prime dividing neither the total lcm nor
    the current entry."""
    value = entries[index - 1]
    floor = tp.coordinate_gcd(entries, index)
    other_lcm = tp.omitted_lcms(entries)[index - 1]
    siblings: list[int] = []
    multiplier = 2
    while len(siblings) < budget.max_transfer_siblings and multiplier <= _SIBLING_SCAN_LIMIT:
        candidate = floor * multiplier
        if candidate != value and gcd(candidate, other_lcm) == floor:
            siblings.append(candidate)
        multiplier += 1
    fresh = floor * _smallest_new_prime(tp.lcm_gcd(entries)[0] * value)
    if fresh != value and fresh not in siblings:
        siblings.append(fresh)
    return siblings


def _transfer(
    entries: Exponents, depth: int, kb: KnowledgeBase
) -> tuple[Certificate | None, bool]:
    """Both tuples sit strictly above a common witness in the same
    coordinate order, so rigidity (and non-rigidity) carries across."""
    critical = sorted(tp.lcm_critical_indices(entries))
    if not critical:
        return None, False
    for index in critical:
        floor = tp.coordinate_gcd(entries, index)
        shared = _replace(entries, index, floor)
        for value in _transfer_siblings(entries, index, kb.budget):
            sibling = _replace(entries, index, value)
            result = _decide(sibling, depth - 1, kb)
            if result.status is Status.UNKNOWN:
                continue
            if result.status.implies_rigid:
                status = Status.RIGID
            else:
                status = Status.NON_RIGID
            certificate = Certificate(
                RuleId.TRANSFER,
                entries,
                status,
                _identity(entries),
                Witness(index=index, exponents=shared, sibling=sibling),
                (result.certificate,),
            )
            return certificate, False
    # The admissible sibling space is unbounded, so an undecided transfer
    # search is always budget-limited.
    return None, True


# --- public standalone rule entry points ------------------------------------


def rule_not_in_tn(exponents) -> Certificate | None:
    return _not_in_tn(tp.as_exponents(exponents, minimum_length=3))


def rule_n3(exponents) -> Certificate | None:
    return _n3(tp.as_exponents(exponents, minimum_length=3))


def rule_low_sum(exponents) -> Certificate | None:
    return _low_sum(tp.as_exponents(exponents, minimum_length=3))


def rule_collection(exponents) -> Certificate | None:
    return _collection(tp.as_exponents(exponents, minimum_length=3))


def rule_equal_exponents(exponents) -> Certificate | None:
    return _equal_exponents(tp.as_exponents(exponents, minimum_length=3))


def rule_i_sum(exponents) -> Certificate | None:
    return _i_sum(tp.as_exponents(exponents, minimum_length=3))


def rule_cotype_high(exponents) -> Certificate | None:
    return _cotype_high(tp.as_exponents(exponents, minimum_length=3))


def rule_recursive_subtuples(exponents, kb: KnowledgeBase | None = None) -> Certificate | None:
    entries = tp.as_exponents(exponents, minimum_length=3)
    kb = kb or KnowledgeBase()
    return _recursive_subtuples(entries, kb.budget.max_depth, kb)[0]


def rule_descend(exponents, kb: KnowledgeBase | None = None) -> Certificate | None:
    entries = tp.as_exponents(exponents, minimum_length=3)
    kb = kb or KnowledgeBase()
    return _descend(entries, kb.budget.max_depth, kb)[0]


def rule_transfer(exponents, kb: KnowledgeBase | None = None) -> Certificate | None:
    entries = tp.as_exponents(exponents, minimum_length=3)
    kb = kb or KnowledgeBase()
    return _transfer(entries, kb.budget.max_depth, kb)[0]


# --- derived reporting -------------------------------------------------------


@dataclass(frozen=True)
class KernelBound:
    """Divisor bound on degrees inside kernels of homogeneous derivations.

    ``value`` is the lcm drop over the critical indices whose removal
    leaves a provably rigid subtuple.  When ``undecided`` is nonempty the
    true bound is a multiple of ``value`` (some subtuples stayed
    UNKNOWN, so they could not be counted).
    """

    value: int
    rigid_critical: frozenset[int]
    undecided: frozenset[int]

    @property
    def is_partial(self) -> bool:
        return bool(self.undecided)


def kernel_degree_bound(exponents, kb: KnowledgeBase | None = None) -> KernelBound:
    """Compute the bound for a tuple of length >= 4 by classifying every
    omit-one subtuple at a critical index."""
    entries = tp.as_exponents(exponents, minimum_length=4)
    kb = kb or KnowledgeBase()
    rigid = set()
    undecided = set()
    for index in sorted(tp.lcm_critical_indices(entries)):
        result = _decide(tp.omit(entries, index), kb.budget.max_depth, kb)
        if result.status.implies_rigid:
            rigid.add(index)
        elif result.status is Status.UNKNOWN:
            undecided.add(index)
    return KernelBound(
        value=tp.lcm_drop(entries, rigid),
        rigid_critical=frozenset(rigid),
        undecided=frozenset(undecided),
    )
