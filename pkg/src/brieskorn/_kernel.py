"""Pure-Python arithmetic kernel: per-tuple divisibility invariants.

Fallback implementation of the hot loop shared with the compiled kernel
in ``_speedups``; both must return identical values for identical input.
"""

from __future__ import annotations

from math import gcd, lcm


def invariant_core(entries):
    """All omit-one gcd/lcm data for a tuple of positive ints (length >= 2).

    Returns ``(total_lcm, total_gcd, omitted_lcms, omitted_gcds,
    coordinate_gcds, lcm_critical_mask, gcd_critical_mask)``.  Bit ``i``
    of a mask refers to coordinate ``i`` (0-based here; callers translate
    to the 1-based index sets used everywhere else).
    """
    n = len(entries)
    prefix_lcm = [1] * (n + 1)
    prefix_gcd = [0] * (n + 1)
    for i, value in enumerate(entries):
        prefix_lcm[i + 1] = lcm(prefix_lcm[i], value)
        prefix_gcd[i + 1] = gcd(prefix_gcd[i], value)
    suffix_lcm = [1] * (n + 1)
    suffix_gcd = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_lcm[i] = lcm(entries[i], suffix_lcm[i + 1])
        suffix_gcd[i] = gcd(entries[i], suffix_gcd[i + 1])
    omitted_lcms = []
    omitted_gcds = []
    coordinate_gcds = []
    lcm_mask = 0
    gcd_mask = 0
    for i, value in enumerate(entries):
        other_lcm = lcm(prefix_lcm[i], suffix_lcm[i + 1])
        other_gcd = gcd(prefix_gcd[i], suffix_gcd[i + 1])
        omitted_lcms.append(other_lcm)
        omitted_gcds.append(other_gcd)
        coordinate_gcds.append(gcd(value, other_lcm))
        if other_lcm % value:
            lcm_mask |= 1 << i
        if value % other_gcd:
            gcd_mask |= 1 << i
    return (
        prefix_lcm[n],
        prefix_gcd[n],
        tuple(omitted_lcms),
        tuple(omitted_gcds),
        tuple(coordinate_gcds),
        lcm_mask,
        gcd_mask,
    )
