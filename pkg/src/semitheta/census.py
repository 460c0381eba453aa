"""Exhaustive census of small semigroups and the property suite run over it.

Properties checked on every semigroup ``T``:

P1  ``theta_n_direct(T, n)`` equals tower level ``n`` for ``n <= stab + 1``
P2  tower ascends strictly, stabilizes within ``|T|`` steps, final quotient left reductive
P3  rebuilding ``T`` from its canonical derivation reproduces every product
P4  canonical family obeys the cocycle law; its build has fibers inside
    theta-classes, and exactly equal to them when ``T/theta(T)`` is left reductive
P5  tower collapses to the universal relation iff ``T`` is a left zero by
    nilpotent ideal extension
P6  the obstruction witness exists iff the exhaustive pair-indexed search finds
    nothing (skipped when the search exceeds its budget)
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .classification import collapse_criterion_holds
from .congruence import tower, theta_n_direct
from .construction import build, validate_family, verify_classes_exact, verify_fiber_containment
from .core import Semigroup, format_table, is_left_reductive
from .isomorphism import canonical_key
from .reconstruction import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    canonical_derivation,
    exhaustive_pairwise_search,
    pairwise_obstruction,
    rebuild_and_compare,
)

MAX_EXHAUSTIVE_ORDER = 4


class OrderTooLarge(ValueError):
    pass


def _check_order(n: int) -> None:
    if n < 1:
        raise ValueError("order must be positive")
    if n > MAX_EXHAUSTIVE_ORDER:
        raise OrderTooLarge(f"exhaustive enumeration is limited to order <= {MAX_EXHAUSTIVE_ORDER}, got {n}")


def _shard(args) -> np.ndarray:
    n, prefix = args
    return _kernels.enumerate_tables(n, prefix)


def labeled_tables(n: int, jobs: int = 1) -> np.ndarray:
    """All associative tables of order ``n``, flattened, in lexicographic order.

    With ``jobs > 1`` the search is sharded on the first table row.
    """
    _check_order(n)
    if jobs <= 1:
        return _kernels.enumerate_tables(n)
    prefixes = list(itertools.product(range(n), repeat=n))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_shard, [(n, p) for p in prefixes]))
    return np.concatenate(parts).reshape(-1, n * n)


def enumerate_labeled(n: int, jobs: int = 1) -> Iterator[Semigroup]:
    for flat in labeled_tables(n, jobs):
        yield Semigroup(flat.reshape(n, n))


def enumerate_iso_classes(n: int, jobs: int = 1) -> list[Semigroup]:
    """One representative (the lexicographically first labeled table) per class."""
    seen: dict[bytes, Semigroup] = {}
    for S in enumerate_labeled(n, jobs):
        seen.setdefault(canonical_key(S), S)
    return list(seen.values())


# ---------------------------------------------------------------------------
# properties; each returns True, False, or None for "skipped"


def check_power_bridge(T: Semigroup) -> bool:
    tw = tower(T)
    return all(theta_n_direct(T, n) == tw.level(n) for n in range(1, tw.stabilization_index + 2))


def check_tower(T: Semigroup) -> bool:
    tw = tower(T)
    levels = tw.levels
    ascending = all(lo.refines(hi) and lo != hi for lo, hi in zip(levels, levels[1:]))
    return ascending and tw.stabilization_index <= T.order and is_left_reductive(tw.final_quotient)


def check_round_trip(T: Semigroup) -> bool:
    return rebuild_and_compare(T)


def check_construction(T: Semigroup) -> bool:
    d = canonical_derivation(T)
    if validate_family(d.family) is not None:
        return False
    built = build(d.family)
    if not verify_fiber_containment(built, d.fibers):
        return False
    if is_left_reductive(d.quotient):
        return verify_classes_exact(built, d.fibers)
    return True


def check_collapse(T: Semigroup) -> bool:
    return collapse_criterion_holds(T)


def check_obstruction(T: Semigroup, budget: int = DEFAULT_BUDGET) -> bool | None:
    try:
        found = exhaustive_pairwise_search(T, budget)
    except BudgetExceeded:
        return None
    return (pairwise_obstruction(T) is not None) == (found is None)


PROPERTIES: dict[str, Callable[[Semigroup], bool | None]] = {
    "P1_power_bridge": check_power_bridge,
    "P2_tower_left_reductive": check_tower,
    "P3_round_trip": check_round_trip,
    "P4_construction": check_construction,
    "P5_collapse_criterion": check_collapse,
    "P6_obstruction_agreement": check_obstruction,
}


def check_semigroup(T: Semigroup) -> dict[str, bool | None]:
    return {name: prop(T) for name, prop in PROPERTIES.items()}


@dataclass
class PropertyResult:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: Semigroup | None = None


@dataclass
class CensusReport:
    order: int
    labeled_count: int
    iso_class_count: int
    property_results: dict[str, PropertyResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.property_results.values())

    def records(self) -> list[str]:
        lines = [
            f"order={self.order}",
            f"labeled_count={self.labeled_count}",
            f"iso_class_count={self.iso_class_count}",
        ]
        for name, r in self.property_results.items():
            lines.append(f"{name}.passed={r.passed}")
            lines.append(f"{name}.failed={r.failed}")
            lines.append(f"{name}.skipped={r.skipped}")
        lines.append(f"ok={'true' if self.ok else 'false'}")
        return lines

    def failure_dumps(self) -> list[str]:
        out = []
        for name, r in self.property_results.items():
            if r.first_failure is not None:
                out.append(f"# first failure of {name}\n" + format_table(r.first_failure))
        return out


def _check_flat(args) -> dict[str, bool | None]:
    n, flat = args
    return check_semigroup(Semigroup(np.asarray(flat).reshape(n, n)))


def run_suite(n: int, jobs: int = 1) -> CensusReport:
    tables = labeled_tables(n, jobs)
    semigroups = [Semigroup(flat.reshape(n, n)) for flat in tables]
    iso_count = len({canonical_key(S) for S in semigroups})
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_check_flat, [(n, flat) for flat in tables], chunksize=64))
    else:
        outcomes = [check_semigroup(S) for S in semigroups]
    report = CensusReport(n, len(semigroups), iso_count, {name: PropertyResult() for name in PROPERTIES})
    # semigroups are in lexicographic order, so the first failure seen is the minimum
    for S, outcome in zip(semigroups, outcomes):
        for name, verdict in outcome.items():
            r = report.property_results[name]
            if verdict is None:
                r.skipped += 1
            elif verdict:
                r.passed += 1
            else:
                r.failed += 1
                if r.first_failure is None:
                    r.first_failure = S
    return report
