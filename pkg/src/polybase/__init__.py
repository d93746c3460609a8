"""Exact invariants of base rings of transversal polymatroids.

Every closed formula in this package ships with a brute-force oracle, and the
test-suite checks one against the other.
"""

__version__ = "0.1.0"
