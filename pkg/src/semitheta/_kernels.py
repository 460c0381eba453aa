"""Hot inner loops: associativity checks and the Cayley-table enumerator.

Every kernel exists twice. The ``*_loops`` variant is plain indexed loops and
is compiled with ``numba.njit`` when numba is importable; the ``*_numpy``
variant is a vectorized fallback. The module-level names without a suffix
dispatch on ``USE_NUMBA``, which is off when ``SEMITHETA_DISABLE_NUMBA`` is
set to a truthy value or numba cannot be imported.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("SEMITHETA_DISABLE_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
    "on",
)


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# associativity


def _first_nonassociative_loops(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                left = table[ab, c]
                right = table[a, table[b, c]]
                if left != right:
                    return a, b, c
    return -1, -1, -1


first_nonassociative_numba = _njit(_first_nonassociative_loops)


def first_nonassociative_numpy(table):
    n = table.shape[0]
    idx = np.arange(n)
    left = table[table]  # [a, b, c] -> (ab)c
    right = table[idx[:, None, None], table[None, :, :]]  # a(bc)
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return -1, -1, -1
    a, b, c = bad[0]
    return int(a), int(b), int(c)


def first_nonassociative(table: np.ndarray) -> tuple[int, int, int]:
    """Lexicographically first triple with ``(ab)c != a(bc)``, or ``(-1, -1, -1)``."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if USE_NUMBA:
        a, b, c = first_nonassociative_numba(table)
        return int(a), int(b), int(c)
    return first_nonassociative_numpy(table)


# ---------------------------------------------------------------------------
# enumeration of associative tables
#
# Cells are filled row-major with values 0..n-1 in increasing order, so output
# is lexicographic in the flattened table. Unfilled cells hold -1 and a triple
# is only checked once all four of its lookups are determined.


def _partial_consistent_loops(t, n):
    for a in range(n):
        for b in range(n):
            ab = t[a * n + b]
            if ab < 0:
                continue
            for c in range(n):
                left = t[ab * n + c]
                if left < 0:
                    continue
                bc = t[b * n + c]
                if bc < 0:
                    continue
                right = t[a * n + bc]
                if right >= 0 and right != left:
                    return False
    return True


_partial_consistent_numba = _njit(_partial_consistent_loops)


def _enumerate_loops(n, prefix):
    cells = n * n
    cap = 64
    out = np.empty((cap, cells), dtype=np.int64)
    count = 0
    t = np.full(cells, -1, dtype=np.int64)
    start = prefix.shape[0]
    for i in range(start):
        t[i] = prefix[i]
    if not _partial_consistent_numba(t, n):
        return out[:0]
    if start == cells:
        out[0, :] = t
        return out[:1]
    pos = start
    while pos >= start:
        t[pos] += 1
        if t[pos] == n:
            t[pos] = -1
            pos -= 1
            continue
        if _partial_consistent_numba(t, n):
            if pos == cells - 1:
                if count == cap:
                    grown = np.empty((cap * 2, cells), dtype=np.int64)
                    grown[:cap] = out
                    out = grown
                    cap *= 2
                out[count, :] = t
                count += 1
            else:
                pos += 1
    return out[:count]


enumerate_numba = _njit(_enumerate_loops) if numba is not None else None


def _partial_consistent_numpy(t, n):
    padded = np.full((n + 1, n + 1), -1, dtype=np.int64)
    padded[:n, :n] = t.reshape(n, n)
    table = padded[:n, :n]
    safe = np.where(table < 0, n, table)
    idx = np.arange(n)
    left = padded[safe[:, :, None], idx[None, None, :]]
    right = padded[idx[:, None, None], safe[None, :, :]]
    return not np.any((left >= 0) & (right >= 0) & (left != right))


def enumerate_numpy(n, prefix):
    cells = n * n
    t = np.full(cells, -1, dtype=np.int64)
    prefix = np.asarray(prefix, dtype=np.int64)
    t[: len(prefix)] = prefix
    found = []

    def extend(pos):
        if not _partial_consistent_numpy(t, n):
            return
        if pos == cells:
            found.append(t.copy())
            return
        for v in range(n):
            t[pos] = v
            extend(pos + 1)
        t[pos] = -1

    extend(len(prefix))
    return np.array(found, dtype=np.int64).reshape(-1, cells)


def enumerate_tables(n: int, prefix=()) -> np.ndarray:
    """All associative ``n x n`` tables extending the row-major ``prefix``.

    Returns an array of shape ``(count, n*n)`` in lexicographic order.
    """
    prefix = np.asarray(prefix, dtype=np.int64).reshape(-1)
    if USE_NUMBA:
        return enumerate_numba(n, prefix)
    return enumerate_numpy(n, prefix)
