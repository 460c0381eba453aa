"""Semigroups built over a base semigroup from fibers and a mapping family.

Given a base semigroup ``S``, pairwise disjoint non-empty fibers ``T_x`` for
``x`` in ``S``, and for each ordered pair ``(x, y)`` a map
``f[x, y]: T_x -> T_{xy}``, the carrier ``T`` (the union of the fibers)
becomes a semigroup under ``a o b = f[x, y](a)`` for ``a`` in ``T_x`` and ``b``
in ``T_y``, provided the cocycle law

    f[xy, z](f[x, y](a)) == f[x, yz](a)    for all x, y, z and a in T_x

holds. Maps are keyed by the ordered pair, never by ``(x, xy)``: two maps with
the same source and target fibers but different middle index are different
maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .congruence import Partition, theta
from .core import Semigroup, TableFormatError, is_left_reductive


class FamilyShapeError(ValueError):
    """A map is missing, or has the wrong domain size or target fiber."""


class FamilyFormatError(TableFormatError):
    pass


@dataclass(frozen=True, eq=False)
class FiberSystem:
    """Assignment of carrier ids ``0..|T|-1`` to base elements.

    ``fiber_of[a]`` is the base element whose fiber contains carrier ``a``.
    Disjointness is structural; every fiber must be non-empty.
    """

    base: Semigroup
    fiber_of: tuple[int, ...]
    names: tuple[str, ...] | None = None
    _members: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _position: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        fiber_of = tuple(int(x) for x in self.fiber_of)
        object.__setattr__(self, "fiber_of", fiber_of)
        n = self.base.order
        if any(not 0 <= x < n for x in fiber_of):
            raise ValueError(f"fiber labels must lie in [0, {n})")
        members: list[list[int]] = [[] for _ in range(n)]
        position = []
        for a, x in enumerate(fiber_of):
            position.append(len(members[x]))
            members[x].append(a)
        empty = [x for x in range(n) if not members[x]]
        if empty:
            raise ValueError(f"fibers over {empty} are empty")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(fiber_of):
                raise ValueError("one name per carrier element expected")
            object.__setattr__(self, "names", names)
        object.__setattr__(self, "_members", tuple(tuple(m) for m in members))
        object.__setattr__(self, "_position", tuple(position))

    @classmethod
    def singletons(cls, S: Semigroup) -> "FiberSystem":
        return cls(S, tuple(range(S.order)), S.names)

    @property
    def carrier_size(self) -> int:
        return len(self.fiber_of)

    def members(self, x: int) -> tuple[int, ...]:
        return self._members[x]

    def position(self, a: int) -> int:
        return self._position[a]

    def partition(self) -> Partition:
        return Partition(self.fiber_of)


@dataclass(frozen=True, eq=False)
class MappingFamily:
    """Maps ``f[x, y]: T_x -> T_{xy}`` for every ordered pair of base elements.

    ``maps[x, y][i]`` is the image of the ``i``-th member (in carrier-id order)
    of ``T_x``.
    """

    fibers: FiberSystem
    maps: Mapping[tuple[int, int], tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(
            self, "maps", {(int(x), int(y)): tuple(int(v) for v in img) for (x, y), img in self.maps.items()}
        )

    @classmethod
    def from_function(cls, fibers: FiberSystem, f: Callable[[int, int, int], int]) -> "MappingFamily":
        """Tabulate ``f(x, y, a)`` over all pairs and all ``a`` in ``T_x``."""
        n = fibers.base.order
        maps = {(x, y): tuple(f(x, y, a) for a in fibers.members(x)) for x in range(n) for y in range(n)}
        return cls(fibers, maps)

    def __call__(self, x: int, y: int, a: int) -> int:
        return self.maps[x, y][self.fibers.position(a)]

    def __eq__(self, other):
        if not isinstance(other, MappingFamily):
            return NotImplemented
        return self.fibers.fiber_of == other.fibers.fiber_of and self.maps == other.maps

    __hash__ = None


@dataclass(frozen=True)
class CocycleViolation:
    """``f[xy, z](f[x, y](a)) = composed`` differs from ``f[x, yz](a) = direct``."""

    x: int
    y: int
    z: int
    a: int
    composed: int
    direct: int


def check_shape(family: MappingFamily) -> None:
    fibers = family.fibers
    S = fibers.base
    for x in range(S.order):
        src = fibers.members(x)
        for y in range(S.order):
            img = family.maps.get((x, y))
            if img is None:
                raise FamilyShapeError(f"no map for pair ({x}, {y})")
            if len(img) != len(src):
                raise FamilyShapeError(f"map ({x}, {y}) lists {len(img)} images for a fiber of size {len(src)}")
            xy = S.mul(x, y)
            for v in img:
                if not 0 <= v < fibers.carrier_size or fibers.fiber_of[v] != xy:
                    raise FamilyShapeError(f"map ({x}, {y}) sends into {v}, which is outside fiber {xy}")
    extra = set(family.maps) - {(x, y) for x in range(S.order) for y in range(S.order)}
    if extra:
        raise FamilyShapeError(f"maps for unknown pairs {sorted(extra)}")


def validate_family(family: MappingFamily) -> CocycleViolation | None:
    """Check the cocycle law on every triple; return the first violation or ``None``.

    Raises :class:`FamilyShapeError` if a map has the wrong domain or codomain.
    """
    check_shape(family)
    S = family.fibers.base
    n = S.order
    for x in range(n):
        for y in range(n):
            xy = S.mul(x, y)
            for z in range(n):
                yz = S.mul(y, z)
                for a in family.fibers.members(x):
                    composed = family(xy, z, family(x, y, a))
                    direct = family(x, yz, a)
                    if composed != direct:
                        return CocycleViolation(x, y, z, a, composed, direct)
    return None


class InvalidFamily(ValueError):
    def __init__(self, violation: CocycleViolation):
        v = violation
        super().__init__(
            f"cocycle law fails at (x, y, z) = ({v.x}, {v.y}, {v.z}) on carrier {v.a}: "
            f"composed route gives {v.composed}, direct map gives {v.direct}"
        )
        self.violation = violation


def product_table(family: MappingFamily) -> np.ndarray:
    """``a o b = f[fiber(a), fiber(b)](a)`` as a raw array, without any validation."""
    check_shape(family)
    fibers = family.fibers
    m = fibers.carrier_size
    table = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        x = fibers.fiber_of[a]
        for b in range(m):
            table[a, b] = family(x, fibers.fiber_of[b], a)
    return table


def build(family: MappingFamily) -> Semigroup:
    """The semigroup ``(T, o)``; raises :class:`InvalidFamily` if the cocycle law fails."""
    violation = validate_family(family)
    if violation is not None:
        raise InvalidFamily(violation)
    # associativity is re-checked by the constructor
    return Semigroup(product_table(family), family.fibers.names)


def verify_fiber_containment(built: Semigroup, fibers: FiberSystem) -> bool:
    """True iff every fiber lies inside a single theta-class of ``built``."""
    return fibers.partition().refines(theta(built))


def verify_classes_exact(built: Semigroup, fibers: FiberSystem) -> bool:
    """True iff the theta-classes of ``built`` are exactly the fibers.

    Only meaningful over a left reductive base; raises ``ValueError`` otherwise.
    """
    if not is_left_reductive(fibers.base):
        raise ValueError("base semigroup is not left reductive")
    return fibers.partition() == theta(built)


# ---------------------------------------------------------------------------
# text format
#
#   family <|S|> <|T|>
#   fibers : <fiber of carrier 0> ... <fiber of carrier |T|-1>
#   names : <carrier symbols>            (optional)
#   map <x> <y> : <images of T_x in carrier-id order>


def format_family(family: MappingFamily) -> str:
    fibers = family.fibers
    n = fibers.base.order
    lines = [f"family {n} {fibers.carrier_size}", "fibers : " + " ".join(map(str, fibers.fiber_of))]
    if fibers.names is not None:
        lines.append("names : " + " ".join(fibers.names))
    for x in range(n):
        for y in range(n):
            lines.append(f"map {x} {y} : " + " ".join(map(str, family.maps[x, y])))
    return "\n".join(lines) + "\n"


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise FamilyFormatError(f"expected integers: {exc}", lineno) from None


def parse_family(text: str, base: Semigroup) -> MappingFamily:
    header = None
    fiber_of = None
    names = None
    maps: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        words = head.split()
        values = tail.split()
        if header is None:
            if sep or len(words) != 3 or words[0] != "family":
                raise FamilyFormatError("expected header 'family <|S|> <|T|>'", lineno)
            header = _ints(words[1:], lineno)
            if header[0] != base.order:
                raise FamilyFormatError(f"family is over a base of order {header[0]}, got {base.order}", lineno)
            continue
        if not sep:
            raise FamilyFormatError("missing ':'", lineno)
        if words == ["fibers"]:
            fiber_of = _ints(values, lineno)
            if len(fiber_of) != header[1]:
                raise FamilyFormatError(f"expected {header[1]} fiber labels", lineno)
        elif words == ["names"]:
            names = values
        elif len(words) == 3 and words[0] == "map":
            x, y = _ints(words[1:], lineno)
            if (x, y) in maps:
                raise FamilyFormatError(f"duplicate map ({x}, {y})", lineno)
            maps[x, y] = tuple(_ints(values, lineno))
        else:
            raise FamilyFormatError(f"unrecognized record {words[0]!r}", lineno)
    if header is None:
        raise FamilyFormatError("empty family file", 1)
    if fiber_of is None:
        raise FamilyFormatError("missing 'fibers' record", 1)
    try:
        fibers = FiberSystem(base, tuple(fiber_of), tuple(names) if names is not None else None)
    except ValueError as exc:
        raise FamilyFormatError(str(exc), 1) from None
    family = MappingFamily(fibers, maps)
    check_shape(family)
    return family
