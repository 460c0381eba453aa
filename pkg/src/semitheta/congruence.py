"""Congruences on finite semigroups and the left-annihilation tower.

``theta(S)`` relates ``a`` and ``b`` when ``x*a == x*b`` for all ``x``, i.e.
when columns ``a`` and ``b`` of the Cayley table agree. ``star`` lifts any
congruence ``rho`` to ``{(a, b) : (x*a, x*b) in rho for all x}``; iterating it
from the identity relation gives the tower ``iota^(0) <= iota^(1) <= ...``
whose level ``n`` equals ``{(a, b) : x*a == x*b for all x in S^n}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Semigroup, power_set


class NotACongruence(ValueError):
    def __init__(self, witness):
        a, b, x, side = witness
        super().__init__(f"not compatible: ({a}, {b}) related but {side} multiplication by {x} separates them")
        self.witness = witness


def _normalize(labels) -> tuple[int, ...]:
    """Renumber block labels by first occurrence."""
    seen: dict[int, int] = {}
    out = []
    for v in labels:
        v = int(v)
        if v not in seen:
            seen[v] = len(seen)
        out.append(seen[v])
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Partition:
    """A partition of ``0..n-1`` stored as normalized block ids.

    Block ids are dense and numbered by least member, so two partitions are
    equal exactly when their ``block_of`` tuples are.
    """

    block_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_of", _normalize(self.block_of))

    @classmethod
    def identity(cls, n: int):
        return cls(tuple(range(n)))

    @classmethod
    def universal(cls, n: int):
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]):
        n = sum(len(b) for b in blocks)
        labels = [-1] * n
        for i, block in enumerate(blocks):
            for a in block:
                if labels[a] != -1:
                    raise ValueError(f"element {a} occurs in two blocks")
                labels[a] = i
        if -1 in labels:
            raise ValueError("blocks do not cover 0..n-1")
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.block_of)

    @property
    def n_blocks(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for a, blk in enumerate(self.block_of):
            out[blk].append(a)
        return [tuple(b) for b in out]

    def related(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def refines(self, other: "Partition") -> bool:
        """``self <= other`` as relations."""
        mapped: dict[int, int] = {}
        for mine, theirs in zip(self.block_of, other.block_of):
            if mapped.setdefault(mine, theirs) != theirs:
                return False
        return True

    def is_identity(self) -> bool:
        return self.n_blocks == self.size

    def is_universal(self) -> bool:
        return self.n_blocks <= 1

    def labels(self) -> np.ndarray:
        return np.asarray(self.block_of, dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.block_of == other.block_of

    def __hash__(self):
        return hash(self.block_of)

    def __str__(self):
        return " ".join(map(str, self.block_of))


class Congruence(Partition):
    """A partition known to be compatible with multiplication on both sides.

    Build one with :meth:`on`, which checks compatibility against ``S``.
    """

    @classmethod
    def on(cls, S: Semigroup, labels) -> "Congruence":
        p = Partition(tuple(labels))
        if p.size != S.order:
            raise ValueError(f"partition has {p.size} elements, semigroup has {S.order}")
        witness = congruence_violation(S, p)
        if witness is not None:
            raise NotACongruence(witness)
        return cls(p.block_of)


def congruence_violation(S: Semigroup, p: Partition):
    """First ``(a, b, x, side)`` with ``a ~ b`` but ``x*a !~ x*b`` (side ``"left"``)
    or ``a*x !~ b*x`` (side ``"right"``); ``None`` if ``p`` is a congruence."""
    blk = p.labels()
    T = S.table
    for block in p.blocks():
        for i, a in enumerate(block):
            for b in block[i + 1 :]:
                left = blk[T[:, a]] != blk[T[:, b]]
                right = blk[T[a, :]] != blk[T[b, :]]
                for x in range(S.order):
                    if left[x]:
                        return a, b, x, "left"
                    if right[x]:
                        return a, b, x, "right"
    return None


def is_congruence(S: Semigroup, p: Partition) -> bool:
    return congruence_violation(S, p) is None


def _group_columns(keys: np.ndarray) -> tuple[int, ...]:
    """Block labels grouping equal columns of ``keys`` (shape rows x n)."""
    if keys.shape[0] == 0:
        return (0,) * keys.shape[1]
    _, inverse = np.unique(keys.T, axis=0, return_inverse=True)
    return _normalize(inverse.reshape(-1))


def star(S: Semigroup, rho: Partition) -> Congruence:
    """``rho*``: ``a ~ b`` iff ``(x*a, x*b) in rho`` for every ``x``."""
    keys = rho.labels()[S.table]
    return Congruence.on(S, _group_columns(keys))


def theta(S: Semigroup) -> Congruence:
    """The congruence of equal Cayley columns."""
    return Congruence.on(S, _group_columns(S.table))


def theta_n_direct(S: Semigroup, n: int) -> Congruence:
    """``a ~ b`` iff ``x*a == x*b`` for every ``x`` in ``S^n``."""
    rows = sorted(power_set(S, n))
    return Congruence.on(S, _group_columns(S.table[rows, :]))


def quotient(S: Semigroup, rho: Partition) -> tuple[Semigroup, np.ndarray]:
    """``S/rho`` and the projection array ``a -> [a]``.

    Blocks are numbered by least representative; block ``[a]`` is named
    ``"[name(a)]"`` after that representative.
    """
    blk = rho.labels()
    reps = [block[0] for block in rho.blocks()]
    table = blk[S.table[np.ix_(reps, reps)]]
    # compatibility makes the choice of representatives irrelevant
    assert np.array_equal(blk[S.table], table[np.ix_(blk, blk)]), "partition is not a congruence"
    names = [f"[{S.name(r)}]" for r in reps]
    return Semigroup(table, names), blk.copy()


@dataclass(frozen=True, eq=False)
class ThetaTower:
    """The ascending tower ``iota^(0) <= iota^(1) <= ...`` until it stabilizes.

    ``levels`` holds levels ``0..stabilization_index``; every later level
    equals the last. ``quotients[i]`` is ``(S/iota^(i), projection)``.
    """

    semigroup: Semigroup
    levels: tuple[Congruence, ...]
    quotients: tuple[tuple[Semigroup, np.ndarray], ...]

    @property
    def stabilization_index(self) -> int:
        return len(self.levels) - 1

    @property
    def final(self) -> Congruence:
        return self.levels[-1]

    @property
    def final_quotient(self) -> Semigroup:
        return self.quotients[-1][0]

    def level(self, i: int) -> Congruence:
        return self.levels[min(i, self.stabilization_index)]


def tower(S: Semigroup) -> ThetaTower:
    levels = [Congruence.on(S, range(S.order))]
    while True:
        nxt = star(S, levels[-1])
        if nxt == levels[-1]:
            break
        # each strict step merges at least one block
        if len(levels) > S.order:
            raise RuntimeError(f"tower failed to stabilize within {S.order} steps")
        levels.append(nxt)
    quotients = tuple(quotient(S, rho) for rho in levels)
    return ThetaTower(S, tuple(levels), quotients)
