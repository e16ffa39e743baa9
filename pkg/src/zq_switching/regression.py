"""Pinned census values.

Representative counts follow the closed form q^C(n,2) * gcd(2,q) / q^n.
Critical-class counts are pinned once a run has been verified; None marks a
parameter pair whose count has not been pinned yet.
"""

from math import comb, gcd
from typing import Any, Dict, Tuple

REP_COUNTS: Dict[Tuple[int, int], int] = {
    (2, 3): 2,
    (2, 5): 64,
    (2, 6): 1024,
    (2, 7): 32768,
    (3, 4): 9,
    (3, 5): 243,
    (3, 6): 19683,
    (4, 5): 2048,
    (5, 5): 3125,
}

# Labeled switching classes that are critical. At (2, 5) these are the
# twelve labelings of a 4-vertex path next to the isolated vertex 0.
CRITICAL_COUNTS: Dict[Tuple[int, int], int] = {
    (2, 5): 12,
    (2, 6): 0,
    (2, 7): 720,
    (3, 5): 0,
    (3, 6): 0,
    (4, 5): 12,
    (5, 5): 0,
}


def expected_class_count(q: int, n: int) -> int:
    """Number of switching classes of Z_q graphs on n vertices."""
    m = comb(n - 1, 2)
    if m == 0:
        return 1
    return q ** m * gcd(2, q) // q


def manifest() -> Dict[str, Any]:
    return {
        "rep_counts": [
            {"q": q, "n": n, "count": c} for (q, n), c in sorted(REP_COUNTS.items())
        ],
        "critical_counts": [
            {"q": q, "n": n, "count": c} for (q, n), c in sorted(CRITICAL_COUNTS.items())
        ],
    }
