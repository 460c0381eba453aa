"""Brute-force reference computations, kept independent of the library."""

import itertools

import numpy as np


def is_associative(t) -> bool:
    n = len(t)
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


def all_associative_tables(n: int) -> list[tuple[int, ...]]:
    """Filter every one of the n^(n*n) magmas."""
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        t = [flat[i * n : (i + 1) * n] for i in range(n)]
        if is_associative(t):
            out.append(flat)
    return out


def isomorphic_brute(A, B) -> bool:
    """Try every bijection."""
    a, b = np.asarray(A), np.asarray(B)
    n = len(a)
    if len(b) != n:
        return False
    for perm in itertools.permutations(range(n)):
        phi = np.array(perm)
        if np.array_equal(phi[a], b[np.ix_(phi, phi)]):
            return True
    return False


def relabel(table, perm):
    """Table of the same semigroup after renaming element i to perm[i]."""
    t = np.asarray(table)
    phi = np.asarray(perm)
    out = np.empty_like(t)
    out[np.ix_(phi, phi)] = phi[t]
    return out


def theta_n_by_products(table, n: int) -> list[int]:
    """Classes of a ~ b iff x1*(x2*(...*(xn*a))) agree for every word x1..xn."""
    t = np.asarray(table)
    size = len(t)
    keys = []
    for a in range(size):
        key = []
        for word in itertools.product(range(size), repeat=n):
            v = a
            for x in reversed(word):
                v = t[x][v]
            key.append(int(v))
        keys.append(tuple(key))
    labels, seen = [], {}
    for k in keys:
        labels.append(seen.setdefault(k, len(seen)))
    return labels


def all_partitions(n: int):
    """Every set partition of range(n) as a normalized label tuple."""

    def rec(i, labels, k):
        if i == n:
            yield tuple(labels)
            return
        for v in range(k + 1):
            yield from rec(i + 1, labels + [v], max(k, v + 1))

    yield from rec(0, [], 0)
