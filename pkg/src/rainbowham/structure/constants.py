"""
Structural Analysis Constants
=============================

Size caps, search effort defaults and the thresholds of the
characteristic-partition extraction, kept in one table. Thresholds are
multiples of sqrt(mu) * n with mu = eps^3.
"""

from fractions import Fraction

# Size caps
EXHAUSTIVE_NICE_MAX_N = 16
AUTO_EXHAUSTIVE_MAX_N = 12
SUBSET_TABLE_MAX_N = 20

# Local search effort
NICE_HEURISTIC_RESTARTS = 200

# Characteristic partition extraction.
# Case 1 applies when |X ∩ Y| >= CASE1_OVERLAP * sqrt(mu) * n.
CASE1_OVERLAP = 2
# Case 1 strips u with d(u, D) <= (1/2 - CASE1_STRIP * sqrt(mu)) * n, then D symmetrically.
CASE1_STRIP = 3
# Case 2 strips v in X with d(v, Y) > CASE2_CROSS * sqrt(mu) * n, and symmetrically.
CASE2_CROSS = 1
# Partition invariants: side degree >= (1/2 - PART_DEGREE * eps) * n, edge budget eps * n^2.
PART_DEGREE = 2

HALF = Fraction(1, 2)


def as_fraction(value) -> Fraction:
    """Exact rational from a float, int, str or Fraction via its decimal string"""
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value))


__all__ = [
    "EXHAUSTIVE_NICE_MAX_N",
    "AUTO_EXHAUSTIVE_MAX_N",
    "SUBSET_TABLE_MAX_N",
    "NICE_HEURISTIC_RESTARTS",
    "CASE1_OVERLAP",
    "CASE1_STRIP",
    "CASE2_CROSS",
    "PART_DEGREE",
    "HALF",
    "as_fraction",
]
