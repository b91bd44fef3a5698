"""Exact arithmetic on exponent tuples.

Every derived invariant of a tuple S = (a_1, ..., a_n) used by the
classifier lives here: gcd/lcm aggregates and their omit-one variants,
the critical index sets and their sizes (type and cotype), the
coordinate-wise divisor order, lcm drop factors, and exact reciprocal
sums.  Index sets and ``index`` arguments are 1-based, matching reports
and certificates.  All arithmetic is exact (ints and Fractions, never
floats); the omit-one bundle is computed by a compiled kernel when one
is available (see :mod:`brieskorn.backend`).

Terminology used throughout:

* an index i is *lcm-critical* when a_i does not divide the lcm of the
  other entries, i.e. removing it strictly lowers the lcm; the number of
  lcm-critical indices is the *cotype* of the tuple;
* an index i is *gcd-critical* when the gcd of the other entries does
  not divide a_i, i.e. removing it strictly raises the gcd; the number
  of gcd-critical indices is the *type*;
* the *degree tuple* of S is (L/a_1, ..., L/a_n) with L = lcm(S): the
  generator degrees of the standard grading of the associated ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

from . import backend
from .errors import InputError

Exponents = tuple[int, ...]
IndexSet = frozenset[int]


def as_exponents(values: Sequence[int] | Iterable[int], *, minimum_length: int = 2) -> Exponents:
    """Validate and normalize a sequence of exponents to a plain tuple.

    Classification entry points require at least three entries; invariant
    computations accept two (subtuples of classified tuples may be that
    short).
    """
    try:
        entries = tuple(values)
    except TypeError:
        raise InputError(f"exponents must be a sequence of integers, got {values!r}") from None
    if len(entries) < minimum_length:
        raise InputError(
            f"need at least {minimum_length} exponents, got {len(entries)}: {entries!r}"
        )
    for value in entries:
        if not isinstance(value, int) or isinstance(value, bool):
            raise InputError(f"exponents must be integers, got {value!r}")
        if value < 1:
            raise InputError(f"exponents must be >= 1, got {value}")
    return entries


@lru_cache(maxsize=1 << 18)
def _core(entries: Exponents):
    return backend.invariant_core(entries)


def _check_index(entries: Exponents, index: int) -> None:
    if not 1 <= index <= len(entries):
        raise InputError(f"index {index} out of range for a tuple of length {len(entries)}")


def _check_index_set(entries: Exponents, indices: Iterable[int]) -> tuple[int, ...]:
    out = sorted(set(indices))
    for index in out:
        _check_index(entries, index)
    return tuple(out)


def _mask_to_indices(mask: int) -> IndexSet:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def lcm_gcd(entries: Exponents) -> tuple[int, int]:
    """(lcm, gcd) of the entries."""
    core = _core(entries)
    return core[0], core[1]


def subtuple(entries: Exponents, removed: Iterable[int]) -> Exponents:
    """Entries with the 1-based indices in ``removed`` omitted, order kept.

    Removing every index is rejected; removing nothing returns the tuple
    unchanged.
    """
    gone = set(_check_index_set(entries, removed))
    if len(gone) == len(entries):
        raise InputError("cannot remove every index from a tuple")
    return tuple(value for i, value in enumerate(entries, start=1) if i not in gone)


def omit(entries: Exponents, index: int) -> Exponents:
    """Entries with the single 1-based ``index`` omitted."""
    _check_index(entries, index)
    return entries[: index - 1] + entries[index:]


def normalization(entries: Exponents) -> Exponents:
    """Entries divided by their gcd; the result has gcd 1."""
    g = _core(entries)[1]
    return tuple(value // g for value in entries)


def degrees(entries: Exponents) -> Exponents:
    """The degree tuple (L/a_1, ..., L/a_n) with L = lcm of the entries.

    Always has gcd 1, and applying it twice yields the normalization of
    the input.
    """
    total = _core(entries)[0]
    return tuple(total // value for value in entries)


def omitted_lcms(entries: Exponents) -> Exponents:
    """lcm of all entries except the i-th, for each i."""
    return _core(entries)[2]


def omitted_gcds(entries: Exponents) -> Exponents:
    """gcd of all entries except the i-th, for each i."""
    return _core(entries)[3]


def lcm_critical_indices(entries: Exponents) -> IndexSet:
    """Indices whose removal strictly lowers the lcm (a_i does not divide
    the lcm of the others)."""
    return _mask_to_indices(_core(entries)[5])


def lcm_stable_indices(entries: Exponents) -> IndexSet:
    """Complement of :func:`lcm_critical_indices`: a_i divides the lcm of
    the others."""
    mask = _core(entries)[5]
    full = (1 << len(entries)) - 1
    return _mask_to_indices(full & ~mask)


def gcd_critical_indices(entries: Exponents) -> IndexSet:
    """Indices whose removal strictly raises the gcd (the gcd of the
    others does not divide a_i)."""
    return _mask_to_indices(_core(entries)[6])


def cotype_sets(entries: Exponents) -> tuple[IndexSet, IndexSet, int]:
    """(lcm-critical set, its complement, cotype)."""
    critical = lcm_critical_indices(entries)
    stable = lcm_stable_indices(entries)
    return critical, stable, len(critical)


def type_set(entries: Exponents) -> tuple[IndexSet, int]:
    """(gcd-critical set, type)."""
    critical = gcd_critical_indices(entries)
    return critical, len(critical)


def cotype(entries: Exponents) -> int:
    return len(lcm_critical_indices(entries))


def type_size(entries: Exponents) -> int:
    return len(gcd_critical_indices(entries))


def coordinate_gcd(entries: Exponents, index: int) -> int:
    """gcd(a_i, lcm of the other entries): the floor of coordinate ``index``
    in the divisor order."""
    _check_index(entries, index)
    return _core(entries)[4][index - 1]


def coordinate_gcds(entries: Exponents) -> Exponents:
    return _core(entries)[4]


def leq_at(smaller: Exponents, larger: Exponents, index: int) -> bool:
    """Coordinate-``index`` divisor order.

    True when both tuples agree outside ``index`` and, writing g for the
    coordinate gcd of the larger tuple at ``index``, g divides the
    smaller entry, which divides the larger entry.
    """
    if len(smaller) != len(larger):
        raise InputError(
            f"tuples must have equal length, got {len(smaller)} and {len(larger)}"
        )
    _check_index(smaller, index)
    if omit(smaller, index) != omit(larger, index):
        return False
    a_small = smaller[index - 1]
    a_large = larger[index - 1]
    g = coordinate_gcd(larger, index)
    return a_small % g == 0 and a_large % a_small == 0


def lt_at(smaller: Exponents, larger: Exponents, index: int) -> bool:
    """Strict variant of :func:`leq_at`."""
    return smaller != larger and leq_at(smaller, larger, index)


def lcm_drop(entries: Exponents, indices: Iterable[int]) -> int:
    """lcm of the entries divided by the gcd of the omit-one lcms over
    ``indices``; 1 for the empty set.

    Always a positive integer, and equal to 1 exactly when ``indices``
    avoids every lcm-critical index.
    """
    chosen = _check_index_set(entries, indices)
    if not chosen:
        return 1
    core = _core(entries)
    g = 0
    for index in chosen:
        g = gcd(g, core[2][index - 1])
    return core[0] // g


def in_tn(entries: Exponents) -> bool:
    """Every entry >= 2 with at most one entry equal to 2: the necessary
    condition for rigidity."""
    return min(entries) >= 2 and entries.count(2) <= 1


def reciprocal_sum(entries: Exponents, indices: Iterable[int] | None = None) -> Fraction:
    """Exact sum of 1/a_i over ``indices`` (all indices when omitted)."""
    if indices is None:
        chosen: Iterable[int] = range(1, len(entries) + 1)
    else:
        chosen = _check_index_set(entries, indices)
    return sum((Fraction(1, entries[i - 1]) for i in chosen), Fraction(0))


def divisors(value: int) -> tuple[int, ...]:
    """All positive divisors of ``value``, ascending."""
    if value < 1:
        raise InputError(f"divisors are defined for positive integers, got {value}")
    small = []
    large = []
    for d in range(1, isqrt(value) + 1):
        if value % d == 0:
            small.append(d)
            if d != value // d:
                large.append(value // d)
    return tuple(small + large[::-1])


def apply_permutation(entries: Exponents, permutation: Sequence[int]) -> Exponents:
    """Reorder entries so that slot k holds entry ``permutation[k]`` (1-based)."""
    if sorted(permutation) != list(range(1, len(entries) + 1)):
        raise InputError(f"not a permutation of 1..{len(entries)}: {tuple(permutation)!r}")
    return tuple(entries[p - 1] for p in permutation)


def identity_permutation(length: int) -> tuple[int, ...]:
    return tuple(range(1, length + 1))


@dataclass(frozen=True)
class InvariantReport:
    """Every derived arithmetic invariant of one exponent tuple."""

    exponents: Exponents
    total_lcm: int
    total_gcd: int
    normalization: Exponents
    degrees: Exponents
    type: int
    cotype: int
    gcd_critical: IndexSet
    lcm_critical: IndexSet
    lcm_stable: IndexSet
    coordinate_gcds: Exponents
    in_tn: bool
    critical_lcm_drop: int
    reciprocal_sum: Fraction

    @property
    def length(self) -> int:
        return len(self.exponents)

    def to_dict(self) -> dict:
        """JSON-ready mapping; rationals rendered exactly, sets sorted."""
        return {
            "tuple": list(self.exponents),
            "lcm": self.total_lcm,
            "gcd": self.total_gcd,
            "normalization": list(self.normalization),
            "degrees": list(self.degrees),
            "type": self.type,
            "cotype": self.cotype,
            "gcd_critical": sorted(self.gcd_critical),
            "lcm_critical": sorted(self.lcm_critical),
            "lcm_stable": sorted(self.lcm_stable),
            "coordinate_gcds": list(self.coordinate_gcds),
            "in_Tn": self.in_tn,
            "critical_lcm_drop": self.critical_lcm_drop,
            "reciprocal_sum": str(self.reciprocal_sum),
        }


def invariant_report(values: Sequence[int] | Iterable[int]) -> InvariantReport:
    """Compute the full invariant bundle for a tuple (length >= 2)."""
    entries = as_exponents(values, minimum_length=2)
    total_lcm, total_gcd, _, _, coord, lcm_mask, gcd_mask = _core(entries)
    lcm_critical = _mask_to_indices(lcm_mask)
    full = (1 << len(entries)) - 1
    return InvariantReport(
        exponents=entries,
        total_lcm=total_lcm,
        total_gcd=total_gcd,
        normalization=tuple(v // total_gcd for v in entries),
        degrees=tuple(total_lcm // v for v in entries),
        type=bin(gcd_mask).count("1"),
        cotype=len(lcm_critical),
        gcd_critical=_mask_to_indices(gcd_mask),
        lcm_critical=lcm_critical,
        lcm_stable=_mask_to_indices(full & ~lcm_mask),
        coordinate_gcds=coord,
        in_tn=in_tn(entries),
        critical_lcm_drop=lcm_drop(entries, lcm_critical),
        reciprocal_sum=reciprocal_sum(entries),
    )
