"""Edit-distance kernels.

Two interchangeable backends compute the unit-cost Levenshtein distance over
Unicode scalar values:

* ``numba``: scalar and batch loops compiled with ``@njit`` (default).
* ``numpy``: a pure-numpy path using a prefix-minimum trick for single pairs
  and length-grouped vectorized dynamic programming for batches.

The backend is chosen once at import time. Set the environment variable
``DRONEVOICE_NUMBA=0`` to force the numpy fallback; it is also selected
automatically when numba is not importable. ``benchmarks/bench_distance.py``
compares the two.
"""
from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

ENV_VAR = "DRONEVOICE_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(ENV_VAR, "1").strip().lower() not in ("0", "false", "off", "no")


if _numba_requested():
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False


def backend() -> str:
    """Name of the active backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if _HAVE_NUMBA else "numpy"


def encode(text: str) -> np.ndarray:
    """Unicode scalar values of ``text`` as a uint32 array."""
    if not text:
        return np.empty(0, dtype=np.uint32)
    return np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32)


def pad_encode(texts: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    """Encode ``texts`` into a zero-padded code matrix plus a length vector."""
    lengths = np.fromiter((len(t) for t in texts), dtype=np.int64, count=len(texts))
    width = max(1, int(lengths.max(initial=0)))
    codes = np.zeros((len(texts), width), dtype=np.uint32)
    for row, text in enumerate(texts):
        if text:
            codes[row, : len(text)] = encode(text)
    return codes, lengths


# --- numba backend ---------------------------------------------------------

def _pair_loop(a, b):
    # two-row dynamic programming over code arrays; unit cost per operation
    la = a.size
    lb = b.size
    if la == 0:
        return lb
    if lb == 0:
        return la
    prev = np.empty(lb + 1, np.int64)
    cur = np.empty(lb + 1, np.int64)
    for j in range(lb + 1):
        prev[j] = j
    for i in range(la):
        cur[0] = i + 1
        ca = a[i]
        for j in range(1, lb + 1):
            cost = 0 if ca == b[j - 1] else 1
            best = prev[j] + 1
            ins = cur[j - 1] + 1
            if ins < best:
                best = ins
            sub = prev[j - 1] + cost
            if sub < best:
                best = sub
            cur[j] = best
        prev, cur = cur, prev
    return prev[lb]


def _to_all_loop(query, codes, lengths, out):
    for k in range(lengths.size):
        out[k] = _pair_loop(query, codes[k, : lengths[k]])


def _pairs_loop(codes, lengths, idx_a, idx_b, out):
    for k in range(idx_a.size):
        ia = idx_a[k]
        ib = idx_b[k]
        out[k] = _pair_loop(codes[ia, : lengths[ia]], codes[ib, : lengths[ib]])


if _HAVE_NUMBA:
    _pair_loop = njit(cache=True)(_pair_loop)
    _to_all_loop = njit(cache=True)(_to_all_loop)
    _pairs_loop = njit(cache=True)(_pairs_loop)


# --- numpy backend ---------------------------------------------------------

def _pair_numpy(a: np.ndarray, b: np.ndarray) -> int:
    la = int(a.size)
    lb = int(b.size)
    if la == 0:
        return lb
    if lb == 0:
        return la
    js = np.arange(lb + 1)
    row = js.copy()
    cand = np.empty(lb + 1, dtype=np.int64)
    for i in range(la):
        cand[0] = i + 1
        cand[1:] = np.minimum(row[1:] + 1, row[:-1] + (b != a[i]))
        # candidates ignore in-row insertions; since row[j] <= row[j-1] + 1,
        # a prefix minimum of cand[k] - k restores them in one vector pass
        row = np.minimum.accumulate(cand - js) + js
    return int(row[lb])


def _pairs_numpy(
    codes: np.ndarray, lengths: np.ndarray, idx_a: np.ndarray, idx_b: np.ndarray
) -> np.ndarray:
    out = np.empty(idx_a.size, dtype=np.int64)
    if idx_a.size == 0:
        return out
    la_all = lengths[idx_a]
    lb_all = lengths[idx_b]
    # group by the (len_a, len_b) shape so each group runs one vectorized DP
    key = la_all * (int(lengths.max(initial=0)) + 1) + lb_all
    order = np.argsort(key, kind="stable")
    bounds = np.flatnonzero(np.diff(key[order])) + 1
    for group in np.split(order, bounds):
        la = int(la_all[group[0]])
        lb = int(lb_all[group[0]])
        if la == 0:
            out[group] = lb
            continue
        if lb == 0:
            out[group] = la
            continue
        a_mat = codes[idx_a[group], :la]
        b_mat = codes[idx_b[group], :lb]
        prev = np.tile(np.arange(lb + 1, dtype=np.int64), (group.size, 1))
        cur = np.empty_like(prev)
        for i in range(1, la + 1):
            cur[:, 0] = i
            col_a = a_mat[:, i - 1]
            for j in range(1, lb + 1):
                cost = (col_a != b_mat[:, j - 1]).astype(np.int64)
                np.minimum(prev[:, j] + 1, cur[:, j - 1] + 1, out=cur[:, j])
                np.minimum(cur[:, j], prev[:, j - 1] + cost, out=cur[:, j])
            prev, cur = cur, prev
        out[group] = prev[:, lb]
    return out


# --- dispatching entry points ----------------------------------------------

def distance(a: str, b: str) -> int:
    """Levenshtein distance between two strings on the active backend."""
    if _HAVE_NUMBA:
        return int(_pair_loop(encode(a), encode(b)))
    return _pair_numpy(encode(a), encode(b))


def distance_to_all(query: str, texts: Sequence[str]) -> np.ndarray:
    """Distances from ``query`` to every string in ``texts``."""
    if not texts:
        return np.empty(0, dtype=np.int64)
    q = encode(query)
    if _HAVE_NUMBA:
        codes, lengths = pad_encode(texts)
        out = np.empty(len(texts), dtype=np.int64)
        _to_all_loop(q, codes, lengths, out)
        return out
    return np.fromiter(
        (_pair_numpy(q, encode(t)) for t in texts), dtype=np.int64, count=len(texts)
    )


def distance_pairs(
    codes: np.ndarray, lengths: np.ndarray, idx_a: np.ndarray, idx_b: np.ndarray
) -> np.ndarray:
    """Batch distances for index pairs into a padded code matrix.

    ``codes``/``lengths`` come from :func:`pad_encode`; ``idx_a``/``idx_b``
    select the row pairs to evaluate.
    """
    idx_a = np.ascontiguousarray(idx_a, dtype=np.int64)
    idx_b = np.ascontiguousarray(idx_b, dtype=np.int64)
    if _HAVE_NUMBA:
        out = np.empty(idx_a.size, dtype=np.int64)
        _pairs_loop(codes, lengths, idx_a, idx_b, out)
        return out
    return _pairs_numpy(codes, lengths, idx_a, idx_b)


def distance_pairs_str(pairs: Iterable[tuple[str, str]]) -> np.ndarray:
    """Batch distances for string pairs; convenience wrapper over arrays."""
    pairs = list(pairs)
    if not pairs:
        return np.empty(0, dtype=np.int64)
    texts: list[str] = []
    seen: dict[str, int] = {}
    idx_a = np.empty(len(pairs), dtype=np.int64)
    idx_b = np.empty(len(pairs), dtype=np.int64)
    for k, (a, b) in enumerate(pairs):
        for side, text in ((idx_a, a), (idx_b, b)):
            row = seen.get(text)
            if row is None:
                row = seen[text] = len(texts)
                texts.append(text)
            side[k] = row
    codes, lengths = pad_encode(texts)
    return distance_pairs(codes, lengths, idx_a, idx_b)


def warmup() -> None:
    """Trigger JIT compilation so later calls run at steady-state speed."""
    distance("warm", "up")
    distance_to_all("warm", ["up", "down"])
    codes, lengths = pad_encode(["a", "bc"])
    distance_pairs(codes, lengths, np.array([0]), np.array([1]))
