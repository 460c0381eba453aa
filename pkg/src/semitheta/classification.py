"""When does the theta tower collapse everything?

The tower reaches the universal relation exactly when ``S`` is an ideal
extension of a left zero semigroup by a nilpotent semigroup: some ideal ``K``
satisfies ``a*b == a`` on ``K`` and the Rees quotient ``S/K`` is nilpotent.
Both sides are decided independently here so the equivalence can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .congruence import tower
from .core import Semigroup, power_set, zero_element

# subset filtering below this order, principal-ideal unions above it
SUBSET_FILTER_MAX_ORDER = 6


class NoZero(ValueError):
    pass


def tower_reaches_universal(S: Semigroup) -> tuple[bool, int | None]:
    """Whether some ``theta_n`` (``n >= 1``) is universal, and the least such ``n``."""
    tw = tower(S)
    if not tw.final.is_universal():
        return False, None
    first = next(i for i, lvl in enumerate(tw.levels) if lvl.is_universal())
    return True, max(first, 1)


def is_ideal(S: Semigroup, K) -> bool:
    K = sorted(K)
    if not K:
        return False
    members = np.zeros(S.order, dtype=bool)
    members[K] = True
    return bool(members[S.table[:, K]].all() and members[S.table[K, :]].all())


def principal_ideal(S: Semigroup, a: int) -> frozenset[int]:
    """``S^1 a S^1``."""
    left = set(int(v) for v in S.table[:, a]) | {a}
    out = set(left)
    for v in left:
        out.update(int(w) for w in S.table[v, :])
    return frozenset(out)


def ideals(S: Semigroup) -> list[frozenset[int]]:
    """All non-empty two-sided ideals, ordered by size then members."""
    n = S.order
    if n <= SUBSET_FILTER_MAX_ORDER:
        found = []
        for mask in range(1, 1 << n):
            K = [a for a in range(n) if mask >> a & 1]
            if is_ideal(S, K):
                found.append(frozenset(K))
    else:
        principals = {principal_ideal(S, a) for a in range(n)}
        found = set(principals)
        frontier = set(principals)
        while frontier:
            fresh = {I | P for I in frontier for P in principals} - found
            found |= fresh
            frontier = fresh
    return sorted(found, key=lambda K: (len(K), sorted(K)))


def is_left_zero_sub(S: Semigroup, K) -> bool:
    K = sorted(K)
    return bool(np.all(S.table[np.ix_(K, K)] == np.asarray(K)[:, None]))


class ReesQuotient(NamedTuple):
    semigroup: Semigroup
    zero: int
    projection: np.ndarray


def rees_quotient(S: Semigroup, K) -> ReesQuotient:
    """``S/K``: elements of ``S`` outside ``K`` in index order, then the zero ``"0K"``."""
    K = frozenset(int(k) for k in K)
    if not is_ideal(S, K):
        raise ValueError("K is not a two-sided ideal")
    rest = [a for a in range(S.order) if a not in K]
    zero = len(rest)
    proj = np.full(S.order, zero, dtype=np.int64)
    proj[rest] = np.arange(len(rest))
    table = proj[S.table[np.ix_(rest + [min(K)], rest + [min(K)])]]
    names = [S.name(a) for a in rest]
    zname = "0K"
    while zname in names:
        zname += "'"
    return ReesQuotient(Semigroup(table, names + [zname]), zero, proj)


def nilpotency_index(Q: Semigroup) -> int | None:
    """Least ``m`` with ``Q^m == {0}``, or ``None`` if ``Q`` is not nilpotent.

    Raises :class:`NoZero` if ``Q`` has no two-sided zero.
    """
    z = zero_element(Q)
    if z is None:
        raise NoZero("semigroup has no zero element")
    # Q^1 > Q^2 > ... strictly until it stalls, so m <= |Q|
    for m in range(1, Q.order + 1):
        if power_set(Q, m) == {z}:
            return m
    return None


@dataclass(frozen=True)
class IdealWitness:
    members: frozenset[int]
    left_zero_ok: bool
    rees_nilpotency_index: int | None

    def check(self, S: Semigroup) -> bool:
        """Re-validate ideal closure, the left zero law and the nilpotency index."""
        if not is_ideal(S, self.members) or is_left_zero_sub(S, self.members) != self.left_zero_ok:
            return False
        Q = rees_quotient(S, self.members)
        m = self.rees_nilpotency_index
        if m is None:
            return nilpotency_index(Q.semigroup) is None
        zero = frozenset({Q.zero})
        if power_set(Q.semigroup, m) != zero:
            return False
        return m == 1 or power_set(Q.semigroup, m - 1) != zero


def leftzero_nilpotent_extension(S: Semigroup) -> IdealWitness | None:
    """First ideal (by size) that is left zero with nilpotent Rees quotient."""
    for K in ideals(S):
        if not is_left_zero_sub(S, K):
            continue
        m = nilpotency_index(rees_quotient(S, K).semigroup)
        if m is not None:
            return IdealWitness(K, True, m)
    return None


def collapse_criterion_holds(S: Semigroup) -> bool:
    """Tower reaches the universal relation iff the extension witness exists."""
    reaches, _ = tower_reaches_universal(S)
    return reaches == (leftzero_nilpotent_extension(S) is not None)
