"""Command-line front end.

Exit codes: 0 when the command ran, whatever its verdict (an obstruction or a
"not left reductive" answer is data); 1 when a self-check that must hold
fails (a round-trip mismatch, a census property failure); 2 on bad input,
including non-associative tables.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .classification import (
    collapse_criterion_holds,
    leftzero_nilpotent_extension,
    tower_reaches_universal,
)
from .congruence import NotACongruence, quotient, theta, tower
from .construction import (
    FamilyShapeError,
    InvalidFamily,
    build,
    format_family,
    parse_family,
    verify_classes_exact,
    verify_fiber_containment,
)
from .core import (
    NonAssociative,
    Semigroup,
    TableFormatError,
    format_table,
    is_left_reductive,
    left_reductive_witness,
    read_table,
)
from .isomorphism import are_isomorphic
from .reconstruction import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    candidate_count,
    canonical_derivation,
    exhaustive_pairwise_search,
    pairwise_obstruction,
    rebuild_and_compare,
    theta_fibers,
)


class InputError(Exception):
    pass


def _yn(flag: bool) -> str:
    return "true" if flag else "false"


def _set(S: Semigroup, members) -> str:
    return "{" + ", ".join(S.name(a) for a in sorted(members)) + "}"


def _load(path: str) -> Semigroup:
    try:
        return read_table(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except NonAssociative as exc:
        raise InputError(f"{path}: not associative: {exc}") from None
    except (TableFormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


class Report:
    """Collects ``key=value`` records and a human rendering side by side."""

    def __init__(self, porcelain: bool):
        self.porcelain = porcelain
        self.lines: list[str] = []
        self.status = 0

    def record(self, key: str, value, human: str | None = None):
        if self.porcelain:
            self.lines.append(f"{key}={value}")
        elif human is not None:
            self.lines.append(human)

    def text(self, human: str):
        if not self.porcelain:
            self.lines.append(human.rstrip("\n"))

    def fail(self):
        self.status = 1


def cmd_check(args, out: Report):
    S = _load(args.table)
    out.record("associative", "true", f"associative order={S.order}")
    out.record("order", S.order)
    out.record("left_reductive", _yn(is_left_reductive(S)))


def cmd_theta(args, out: Report):
    S = _load(args.table)
    rho = theta(S)
    out.record("partition", rho, str(rho))
    out.record("classes", rho.n_blocks, "classes: " + " ".join(_set(S, b) for b in rho.blocks()))
    witness = left_reductive_witness(S)
    out.record(
        "left_reductive",
        _yn(witness is None),
        "left reductive: yes"
        if witness is None
        else f"left reductive: no (columns {S.name(witness[0])} and {S.name(witness[1])} agree)",
    )


def cmd_tower(args, out: Report):
    S = _load(args.table)
    tw = tower(S)
    out.record("stabilization_index", tw.stabilization_index, f"stabilization index: {tw.stabilization_index}")
    for i, lvl in enumerate(tw.levels):
        out.record(f"level.{i}", lvl, f"level {i}: {lvl}  ({lvl.n_blocks} classes)")
    final = tw.final_quotient
    out.record("final_order", final.order)
    out.record(
        "final_left_reductive",
        _yn(is_left_reductive(final)),
        f"final quotient: order {final.order}, left reductive: {'yes' if is_left_reductive(final) else 'no'}",
    )


def cmd_quotient(args, out: Report):
    S = _load(args.table)
    tw = tower(S)
    Q, _ = quotient(S, tw.level(args.level))
    out.record("level", args.level)
    out.record("order", Q.order)
    out.record("names", " ".join(Q.names))
    for i, row in enumerate(Q.table):
        out.record(f"row.{i}", " ".join(Q.names[v] for v in row))
    out.text(format_table(Q))


def cmd_reconstruct(args, out: Report):
    T = _load(args.table)
    d = canonical_derivation(T)
    text = format_family(d.family)
    if args.family_out:
        with open(args.family_out, "w") as fh:
            fh.write(text)
    ok = rebuild_and_compare(T)
    out.record("quotient_order", d.quotient.order)
    out.record("carrier_size", d.fibers.carrier_size)
    out.record("fibers", " ".join(map(str, d.fibers.fiber_of)))
    for (x, y), img in d.family.maps.items():
        out.record(f"map.{x}.{y}", " ".join(map(str, img)))
    out.text(text)
    out.record("rebuild", "ok" if ok else "mismatch", f"rebuild: {'ok' if ok else 'MISMATCH'}")
    if not ok:
        out.fail()


def cmd_build(args, out: Report):
    S = _load(args.base)
    try:
        with open(args.family) as fh:
            family = parse_family(fh.read(), S)
        T = build(family)
    except OSError as exc:
        raise InputError(f"{args.family}: {exc.strerror}") from None
    except (TableFormatError, FamilyShapeError, InvalidFamily, ValueError) as exc:
        raise InputError(f"{args.family}: {exc}") from None
    contained = verify_fiber_containment(T, family.fibers)
    out.record("order", T.order)
    for i, row in enumerate(T.table):
        out.record(f"row.{i}", " ".join(T.names[v] for v in row))
    out.text(format_table(T))
    out.record("fibers_in_theta_classes", _yn(contained), f"fibers inside theta-classes: {_yn(contained)}")
    if is_left_reductive(S):
        exact = verify_classes_exact(T, family.fibers)
        out.record("fibers_equal_theta_classes", _yn(exact), f"fibers equal theta-classes: {_yn(exact)}")
        contained = contained and exact
    if not contained:
        out.fail()


def cmd_obstruct(args, out: Report):
    T = _load(args.table)
    w = pairwise_obstruction(T)
    if w is None:
        out.record("witness", "none", "witness none")
    else:
        a, b, b2 = T.name(w.a), T.name(w.b), T.name(w.b_alt)
        out.record("witness", f"{a} {b} {b2}", f"witness a={a} b={b} b'={b2}")
    out.record("candidates", candidate_count(theta_fibers(T)))
    try:
        found = exhaustive_pairwise_search(T, args.budget)
    except BudgetExceeded as exc:
        out.record("exhaustive", "budget_exceeded", f"exhaustive: skipped ({exc})")
        return
    verdict = "none_found" if found is None else "found"
    out.record("exhaustive", verdict, f"exhaustive: {verdict}")
    agree = (w is None) == (found is not None)
    out.record("agreement", _yn(agree))
    if not agree:
        out.text("agreement: NO (witness and exhaustive search disagree)")
        out.fail()


def cmd_classify(args, out: Report):
    S = _load(args.table)
    tw = tower(S)
    reaches, level = tower_reaches_universal(S)
    witness = leftzero_nilpotent_extension(S)
    ok = collapse_criterion_holds(S)
    out.record("stabilization_index", tw.stabilization_index, f"tower stabilizes at level {tw.stabilization_index}")
    out.record(
        "reaches_universal",
        _yn(reaches),
        f"reaches universal relation: yes, at level {level}" if reaches else "reaches universal relation: no",
    )
    out.record("universal_level", level if reaches else "none")
    if witness is None:
        out.record("ideal", "none", "left zero ideal with nilpotent Rees quotient: none")
        out.record("nilpotency_index", "none")
    else:
        members = " ".join(S.name(a) for a in sorted(witness.members))
        out.record(
            "ideal",
            members,
            f"left zero ideal with nilpotent Rees quotient: {_set(S, witness.members)}, "
            f"nilpotency index {witness.rees_nilpotency_index}",
        )
        out.record("nilpotency_index", witness.rees_nilpotency_index)
    out.record("criterion", _yn(ok), f"criterion holds: {'yes' if ok else 'NO'}")
    if not ok:
        out.fail()


def cmd_iso(args, out: Report):
    A, B = _load(args.table_a), _load(args.table_b)
    w = are_isomorphic(A, B)
    out.record("isomorphic", _yn(w is not None))
    out.record("mapping", w if w is not None else "none", str(w) if w is not None else "none")


def cmd_suite(args, out: Report):
    from .census import check_semigroup

    T = _load(args.table)
    for name, verdict in check_semigroup(T).items():
        word = "skipped" if verdict is None else ("pass" if verdict else "fail")
        out.record(name, word, f"{name}: {word}")
        if verdict is False:
            out.fail()


def cmd_census(args, out: Report):
    from .census import MAX_EXHAUSTIVE_ORDER, OrderTooLarge, enumerate_iso_classes, labeled_tables, run_suite

    if args.order > MAX_EXHAUSTIVE_ORDER:
        raise InputError(str(OrderTooLarge(f"exhaustive census is limited to order <= {MAX_EXHAUSTIVE_ORDER}")))
    if args.order < 1:
        raise InputError("order must be positive")
    if args.order == 4 and not args.full:
        raise InputError("order 4 census is gated: pass --full to run it")
    # census output is key=value in both modes
    out.porcelain = True
    if args.suite:
        report = run_suite(args.order, jobs=args.jobs)
        out.lines.extend(report.records())
        if args.dump_failures:
            out.lines.extend(d.rstrip("\n") for d in report.failure_dumps())
        if not report.ok:
            out.fail()
        return
    out.record("order", args.order)
    out.record("labeled_count", len(labeled_tables(args.order, args.jobs)))
    if args.iso:
        out.record("iso_class_count", len(enumerate_iso_classes(args.order, args.jobs)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semitheta", description="Finite semigroup theta-tower toolkit")
    parser.add_argument("--porcelain", action="store_true", help="emit key=value records")
    # also accepted after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def table_cmd(name, fn, help_):
        p = add(name, help=help_)
        p.add_argument("table")
        p.set_defaults(fn=fn)
        return p

    table_cmd("check", cmd_check, "validate a Cayley table")
    table_cmd("theta", cmd_theta, "theta-classes (equal columns)")
    table_cmd("tower", cmd_tower, "the theta tower and its stabilization")
    p = table_cmd("quotient", cmd_quotient, "quotient by a tower level")
    p.add_argument("--level", type=int, default=1)
    p = table_cmd("reconstruct", cmd_reconstruct, "canonical family and rebuild check")
    p.add_argument("--family-out", metavar="FILE")
    p = table_cmd("obstruct", cmd_obstruct, "pair-indexed obstruction witness and exhaustive search")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    table_cmd("classify", cmd_classify, "does the tower reach the universal relation?")
    table_cmd("suite", cmd_suite, "run every census property on one table")

    p = add("build", help="build a semigroup from a base table and a family file")
    p.add_argument("base")
    p.add_argument("family")
    p.set_defaults(fn=cmd_build)

    p = add("iso", help="isomorphism witness between two tables")
    p.add_argument("table_a")
    p.add_argument("table_b")
    p.set_defaults(fn=cmd_iso)

    p = add("census", help="enumerate all semigroups of a small order")
    p.add_argument("order", type=int)
    p.add_argument("--iso", action="store_true", help="also count isomorphism classes")
    p.add_argument("--suite", action="store_true", help="run the property suite on every semigroup")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--full", action="store_true", help="allow the order-4 census")
    p.add_argument("--dump-failures", action="store_true")
    p.set_defaults(fn=cmd_census)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Run one command; returns ``(exit_code, stdout_text)``. Errors go to stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), ""
    out = Report(args.porcelain)
    try:
        args.fn(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""
    except NotACongruence as exc:  # pragma: no cover - internal invariant
        print(f"internal error: {exc}", file=sys.stderr)
        return 1, ""
    text = "\n".join(out.lines) + ("\n" if out.lines else "")
    return out.status, text


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
