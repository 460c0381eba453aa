"""Finite semigroups given by Cayley tables.

Elements are the dense indices ``0..n-1``; ``table[a, b]`` is the product
``a*b``. Symbolic names only matter for reading and printing tables.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


class TableFormatError(ValueError):
    """Malformed Cayley-table text, located by 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NonAssociative(ValueError):
    """Raised when a table fails ``(a*b)*c == a*(b*c)``."""

    def __init__(self, a: int, b: int, c: int, left: int, right: int):
        super().__init__(f"(a*b)*c = {left} but a*(b*c) = {right} for (a, b, c) = ({a}, {b}, {c})")
        self.a, self.b, self.c = a, b, c
        self.left, self.right = left, right


class Semigroup:
    """An immutable, validated finite semigroup.

    ``Semigroup(table)`` checks shape, entry range and associativity; a
    failing associativity check raises :class:`NonAssociative` carrying the
    lexicographically first bad triple.
    """

    __slots__ = ("table", "names", "_index")

    def __init__(self, table, names: Sequence[str] | None = None):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"Cayley table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise ValueError(f"table entries must lie in [0, {n})")
        if names is None:
            names = [str(i) for i in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise ValueError(f"expected {n} names, got {len(names)}")
        if len(set(names)) != n:
            raise ValueError("element names must be pairwise distinct")
        a, b, c = _kernels.first_nonassociative(arr)
        if a >= 0:
            raise NonAssociative(a, b, c, int(arr[arr[a, b], c]), int(arr[a, arr[b, c]]))
        arr.setflags(write=False)
        self.table = arr
        self.names = names
        self._index = {s: i for i, s in enumerate(names)}

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def index(self, name: str) -> int:
        return self._index[name]

    def name(self, a: int) -> str:
        return self.names[a]

    def renamed(self, names: Sequence[str]) -> "Semigroup":
        return Semigroup(self.table, names)

    def __eq__(self, other):
        if not isinstance(other, Semigroup):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.names, self.table.tobytes()))

    def __repr__(self):
        return f"Semigroup(order={self.order}, names={list(self.names)})"


def validate(table, names: Sequence[str] | None = None) -> Semigroup:
    """Validate a raw Cayley table; raises :class:`NonAssociative` for magmas."""
    return Semigroup(table, names)


def trivial() -> Semigroup:
    return Semigroup([[0]])


def left_zero(n: int) -> Semigroup:
    return Semigroup([[i] * n for i in range(n)])


def right_zero(n: int) -> Semigroup:
    return Semigroup([list(range(n)) for _ in range(n)])


def monogenic_nilpotent(m: int) -> Semigroup:
    """``{a, a^2, ..., a^(m-1), 0}`` with ``a^m = 0``; element ``i`` is ``a^(i+1)``, the zero is last."""
    zero = m - 1
    table = [[min(i + j + 1, zero) for j in range(m)] for i in range(m)]
    for i in range(m):
        table[i][zero] = table[zero][i] = zero
    names = ["a" if i == 0 else f"a{i + 1}" for i in range(m - 1)] + ["0"]
    return Semigroup(table, names)


def left_translation(S: Semigroup, x: int) -> dict[int, int]:
    """The map ``a -> x*a``."""
    return {a: int(v) for a, v in enumerate(S.table[x])}


def power_set(S: Semigroup, n: int) -> frozenset[int]:
    """``S^n``, the set of all products of ``n`` elements."""
    if n < 1:
        raise ValueError("n must be positive")
    level = np.arange(S.order)
    for _ in range(n - 1):
        level = np.unique(S.table[:, level])
    return frozenset(int(v) for v in level)


def product_set(S: Semigroup, left: Iterable[int], right: Iterable[int]) -> frozenset[int]:
    left, right = list(left), list(right)
    return frozenset(int(v) for v in np.unique(S.table[np.ix_(left, right)]))


def left_reductive_witness(S: Semigroup) -> tuple[int, int] | None:
    """First pair ``a < b`` with identical Cayley columns, or ``None``."""
    seen: dict[bytes, int] = {}
    cols = np.ascontiguousarray(S.table.T)
    for b in range(S.order):
        key = cols[b].tobytes()
        if key in seen:
            return seen[key], b
        seen[key] = b
    return None


def is_left_reductive(S: Semigroup) -> bool:
    """True iff ``x*a == x*b`` for every ``x`` forces ``a == b``."""
    return left_reductive_witness(S) is None


def zero_element(S: Semigroup) -> int | None:
    for z in range(S.order):
        if np.all(S.table[z] == z) and np.all(S.table[:, z] == z):
            return z
    return None


def idempotents(S: Semigroup) -> list[int]:
    return [a for a in range(S.order) if S.table[a, a] == a]


# ---------------------------------------------------------------------------
# text format
#
#   # comment
#   e a u v 0          <- element symbols, index order
#   e a 0 0 0          <- row i: products (element i)*(element j)
#   ...


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, raw


def _tokens(raw: str):
    """Yield ``(column, token)`` for whitespace-separated tokens."""
    col = 0
    for tok in raw.split():
        col = raw.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def parse_table(text: str) -> Semigroup:
    lines = list(_content_lines(text))
    if not lines:
        raise TableFormatError("empty table: expected a header line of element symbols", 1)
    head_no, head = lines[0]
    names = [tok for _, tok in _tokens(head)]
    if len(set(names)) != len(names):
        raise TableFormatError("duplicate element symbol in header", head_no)
    index = {s: i for i, s in enumerate(names)}
    n = len(names)
    rows = lines[1:]
    if len(rows) != n:
        where = rows[-1][0] + 1 if rows else head_no + 1
        raise TableFormatError(f"expected {n} table rows, found {len(rows)}", where)
    table = []
    for lineno, raw in rows:
        toks = list(_tokens(raw))
        if len(toks) != n:
            raise TableFormatError(f"expected {n} entries, found {len(toks)}", lineno)
        row = []
        for col, tok in toks:
            if tok not in index:
                raise TableFormatError(f"unknown element symbol {tok!r}", lineno, col)
            row.append(index[tok])
        table.append(row)
    return Semigroup(table, names)


def read_table(path: str | Path) -> Semigroup:
    return parse_table(Path(path).read_text())


def format_table(S: Semigroup) -> str:
    width = max(len(s) for s in S.names)
    fmt = lambda s: s.ljust(width)  # noqa: E731
    lines = [" ".join(fmt(s) for s in S.names).rstrip()]
    for row in S.table:
        lines.append(" ".join(fmt(S.names[v]) for v in row).rstrip())
    return "\n".join(lines) + "\n"
