"""Isomorphism testing and canonical keys for small semigroups.

Both operations rest on an element invariant that any isomorphism must
preserve. Candidate images are restricted to elements with the same
invariant, and partial bijections are extended only while every determined
product is respected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Semigroup


@dataclass(frozen=True)
class IsomorphismWitness:
    """``mapping[a]`` is the image of element ``a``."""

    mapping: tuple[int, ...]

    def verify(self, A: Semigroup, B: Semigroup) -> bool:
        phi = np.asarray(self.mapping, dtype=np.int64)
        if A.order != B.order or sorted(self.mapping) != list(range(B.order)):
            return False
        return bool(np.array_equal(phi[A.table], B.table[np.ix_(phi, phi)]))

    def __str__(self):
        return " ".join(map(str, self.mapping))


def element_invariants(S: Semigroup) -> list[tuple]:
    T = S.table
    n = S.order
    idx = np.arange(n)
    out = []
    for x in range(n):
        row, col = T[x], T[:, x]
        # index and period of x in its monogenic subsemigroup
        powers = [x]
        while True:
            nxt = int(T[powers[-1], x])
            if nxt in powers:
                index = powers.index(nxt) + 1
                period = len(powers) - powers.index(nxt)
                break
            powers.append(nxt)
        out.append(
            (
                int(T[x, x] == x),
                int(np.sum(row == x)),
                int(np.sum(col == x)),
                int(np.sum(row == idx)),
                int(np.sum(col == idx)),
                len(set(row.tolist())),
                len(set(col.tolist())),
                index,
                period,
            )
        )
    return out


def are_isomorphic(A: Semigroup, B: Semigroup) -> IsomorphismWitness | None:
    if A.order != B.order:
        return None
    n = A.order
    inv_a, inv_b = element_invariants(A), element_invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [[b for b in range(n) if inv_b[b] == inv_a[a]] for a in range(n)]
    order = sorted(range(n), key=lambda a: (len(candidates[a]), a))
    TA, TB = A.table, B.table
    phi = [-1] * n
    used = [False] * n

    def consistent(a: int) -> bool:
        fa = phi[a]
        for c in range(n):
            fc = phi[c]
            if fc < 0:
                continue
            for p, q, fp, fq in ((a, c, fa, fc), (c, a, fc, fa)):
                prod = phi[TA[p, q]]
                image = TB[fp, fq]
                if prod >= 0:
                    if prod != image:
                        return False
                elif used[image] or inv_b[image] != inv_a[TA[p, q]]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        for b in candidates[a]:
            if used[b]:
                continue
            phi[a] = b
            used[b] = True
            if consistent(a) and extend(k + 1):
                return True
            phi[a] = -1
            used[b] = False
        return False

    if not extend(0):
        return None
    witness = IsomorphismWitness(tuple(phi))
    assert witness.verify(A, B), "isomorphism search returned a non-homomorphism"
    return witness


def canonical_key(S: Semigroup) -> bytes:
    """Isomorphism-invariant serialization: equal keys iff isomorphic.

    Elements are first ordered by invariant; the key is the lexicographically
    least relabeled table over all orderings that respect that grouping.
    """
    n = S.order
    inv = element_invariants(S)
    groups: dict[tuple, list[int]] = {}
    for a in range(n):
        groups.setdefault(inv[a], []).append(a)
    keys = sorted(groups)
    best = None
    for perms in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
        # new label i goes to old element sequence[i]
        sequence = [a for block in perms for a in block]
        relabel = np.empty(n, dtype=np.int64)
        relabel[sequence] = np.arange(n)
        table = tuple(relabel[S.table[np.ix_(sequence, sequence)]].ravel().tolist())
        if best is None or table < best:
            best = table
    return np.asarray((n, *best), dtype=">u4").tobytes()
