"""Order statistics of opinion vectors.

The median follows the upper-median convention: the element at 0-indexed
position floor(n/2) of the ascending sort. For even n this is the larger
of the two central values, which is the convention under which an exact
half/half split of positive and zero opinions yields a positive median.
"""

import numpy as np


def median(x):
    """Upper median: ascending sort, element at position floor(n/2)."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("median of empty vector")
    return float(np.sort(x)[x.size // 2])


def quantile(x, q):
    """q-th quantile: ascending sort, element at position floor(q * n).

    quantile(x, 0.5) equals median(x) for every length.
    """
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("quantile of empty vector")
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    idx = min(int(np.floor(q * x.size)), x.size - 1)
    return float(np.sort(x)[idx])


def mean(x):
    """Arithmetic mean."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("mean of empty vector")
    return float(x.mean())
