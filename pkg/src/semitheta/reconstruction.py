"""Recovering a semigroup from its theta-quotient.

Every ``T`` is rebuilt exactly from ``S = T/theta(T)``: fibers are the
theta-classes and ``f[[x], [y]]`` sends ``a`` to ``a*b`` for any ``b`` in
``[y]`` (well defined because theta-related elements have equal columns).

The older construction keyed its maps by ``(source class, target class)``
only. :func:`pairwise_obstruction` finds a certificate that no such family can
reproduce ``T``, and :func:`exhaustive_pairwise_search` confirms it
independently by trying every family that obeys the composition law.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .congruence import quotient, theta
from .construction import FiberSystem, MappingFamily, build, validate_family
from .core import Semigroup

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True, eq=False)
class CanonicalDerivation:
    source: Semigroup
    quotient: Semigroup
    projection: np.ndarray
    fibers: FiberSystem
    family: MappingFamily


def canonical_derivation(T: Semigroup) -> CanonicalDerivation:
    rho = theta(T)
    S, proj = quotient(T, rho)
    fibers = FiberSystem(S, tuple(int(v) for v in proj), T.names)
    maps = {}
    for x in range(S.order):
        src = fibers.members(x)
        for y in range(S.order):
            cls = fibers.members(y)
            # products a*b for every representative b of [y]; columns agree within a class
            images = T.table[np.ix_(src, cls)]
            if not np.all(images == images[:, :1]):
                raise AssertionError(f"a*b depends on the representative of class {y}")
            maps[x, y] = tuple(int(v) for v in images[:, 0])
    family = MappingFamily(fibers, maps)
    violation = validate_family(family)
    if violation is not None:
        raise AssertionError(f"canonical family violates the cocycle law: {violation}")
    return CanonicalDerivation(T, S, proj, fibers, family)


def rebuild_and_compare(T: Semigroup) -> bool:
    """Rebuild ``T`` from its canonical derivation; True iff every product agrees."""
    rebuilt = build(canonical_derivation(T).family)
    return bool(np.array_equal(rebuilt.table, T.table))


@dataclass(frozen=True)
class ObstructionWitness:
    """``a*b`` and ``a*b_alt`` lie in one theta-class yet differ."""

    a: int
    b: int
    b_alt: int


def pairwise_obstruction(T: Semigroup) -> ObstructionWitness | None:
    blk = theta(T).labels()
    n = T.order
    for a in range(n):
        row = T.table[a]
        for b in range(n):
            for b_alt in range(b + 1, n):
                if row[b] != row[b_alt] and blk[row[b]] == blk[row[b_alt]]:
                    return ObstructionWitness(a, b, b_alt)
    return None


# ---------------------------------------------------------------------------
# pair-indexed families: one map f[x, z]: T_x -> T_z for each z in xS,
# subject to f[y, z] o f[x, y] == f[x, z] whenever y in xS and z in yS.


class BudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"{count} candidate pair-indexed families exceed the budget of {budget}")
        self.count = count
        self.budget = budget


@dataclass(frozen=True, eq=False)
class PairwiseFamily:
    fibers: FiberSystem
    maps: Mapping[tuple[int, int], tuple[int, ...]]

    def __call__(self, x: int, z: int, a: int) -> int:
        return self.maps[x, z][self.fibers.position(a)]

    def product_table(self) -> np.ndarray:
        """``a o b = f[x, xy](a)`` for ``a`` in ``T_x``, ``b`` in ``T_y``."""
        fibers = self.fibers
        S = fibers.base
        m = fibers.carrier_size
        table = np.empty((m, m), dtype=np.int64)
        for a in range(m):
            x = fibers.fiber_of[a]
            for b in range(m):
                table[a, b] = self(x, S.mul(x, fibers.fiber_of[b]), a)
        return table


def theta_fibers(T: Semigroup) -> FiberSystem:
    S, proj = quotient(T, theta(T))
    return FiberSystem(S, tuple(int(v) for v in proj), T.names)


def reachable_pairs(S: Semigroup) -> list[tuple[int, int]]:
    return [(x, z) for x in range(S.order) for z in sorted(set(int(v) for v in S.table[x]))]


def candidate_count(fibers: FiberSystem) -> int:
    total = 1
    for x, z in reachable_pairs(fibers.base):
        total *= len(fibers.members(z)) ** len(fibers.members(x))
    return total


def lawful_pairwise_families(fibers: FiberSystem) -> Iterator[PairwiseFamily]:
    """Every pair-indexed family obeying the composition law, in lexicographic order.

    Law instances are checked as soon as their three maps are assigned.
    """
    S = fibers.base
    pairs = reachable_pairs(S)
    slot = {p: i for i, p in enumerate(pairs)}
    # instances (f[x,y], f[y,z], f[x,z]) grouped by the latest slot they touch
    pending: list[list[tuple[int, int, int]]] = [[] for _ in pairs]
    for x, y in pairs:
        for y2, z in pairs:
            if y2 != y:
                continue
            i, j, k = slot[x, y], slot[y, z], slot[x, z]
            pending[max(i, j, k)].append((i, j, k))

    choices = [
        list(itertools.product(fibers.members(z), repeat=len(fibers.members(x)))) for x, z in pairs
    ]
    # image lookup per slot: carrier id -> image, for carriers in T_x
    assigned: list[dict[int, int] | None] = [None] * len(pairs)
    chosen: list[tuple[int, ...] | None] = [None] * len(pairs)

    def lawful(k: int) -> bool:
        for i, j, l in pending[k]:
            first, second, direct = assigned[i], assigned[j], assigned[l]
            for a, v in first.items():
                if second[v] != direct[a]:
                    return False
        return True

    def extend(k: int):
        if k == len(pairs):
            yield PairwiseFamily(fibers, dict(zip(pairs, chosen)))
            return
        src = fibers.members(pairs[k][0])
        for img in choices[k]:
            assigned[k] = dict(zip(src, img))
            chosen[k] = img
            if lawful(k):
                yield from extend(k + 1)
        assigned[k] = chosen[k] = None

    yield from extend(0)


def exhaustive_pairwise_search(T: Semigroup, budget: int = DEFAULT_BUDGET) -> PairwiseFamily | None:
    """A lawful pair-indexed family over ``T/theta(T)`` reproducing ``T``, or ``None``.

    Raises :class:`BudgetExceeded` when the unpruned candidate space is larger
    than ``budget``.
    """
    fibers = theta_fibers(T)
    count = candidate_count(fibers)
    if count > budget:
        raise BudgetExceeded(count, budget)
    for fam in lawful_pairwise_families(fibers):
        if np.array_equal(fam.product_table(), T.table):
            return fam
    return None
