"""Independent reference implementations the test suite trusts.

These are deliberately naive, written straight from the textbook recurrence
with no shared code or tricks from the production kernels, so agreement
between the two is meaningful.
"""
from __future__ import annotations

import numpy as np


def levenshtein_oracle(a: str, b: str) -> int:
    """Full-matrix unit-cost edit distance.

    d[i][j] = max(i, j) when min(i, j) = 0, else
    min(d[i-1][j] + 1, d[i][j-1] + 1, d[i-1][j-1] + cost) with cost 0 on
    equal characters and 1 otherwise.
    """
    m, n = len(a), len(b)
    d = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        d[i][0] = i
    for j in range(n + 1):
        d[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[m][n]


def levenshtein_oracle_batch(pairs_a: np.ndarray, pairs_b: np.ndarray) -> np.ndarray:
    """Edit distances for many equal-length pairs at once.

    pairs_a and pairs_b are (count, length) integer code matrices of
    same-length strings (no padding). Evaluates the same recurrence as
    levenshtein_oracle, vectorized across the pair axis only: entry
    (i, j) of the DP matrix is computed for all pairs simultaneously,
    keeping the per-cell logic textbook-shaped.
    """
    count, m = pairs_a.shape
    _, n = pairs_b.shape
    d = np.empty((count, m + 1, n + 1), dtype=np.int64)
    d[:, :, 0] = np.arange(m + 1)
    d[:, 0, :] = np.arange(n + 1)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            cost = (pairs_a[:, i - 1] != pairs_b[:, j - 1]).astype(np.int64)
            d[:, i, j] = np.minimum(
                np.minimum(d[:, i - 1, j] + 1, d[:, i, j - 1] + 1),
                d[:, i - 1, j - 1] + cost,
            )
    return d[:, m, n]


def encode_strings(texts: list[str], width: int) -> np.ndarray:
    """Code-point matrix for equal-length strings, one row per string."""
    out = np.zeros((len(texts), width), dtype=np.int64)
    for row, text in enumerate(texts):
        assert len(text) == width
        for col, ch in enumerate(text):
            out[row, col] = ord(ch)
    return out
