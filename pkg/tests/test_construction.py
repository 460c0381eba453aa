import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semitheta.census import enumerate_labeled
from semitheta.construction import (
    CocycleViolation,
    FamilyFormatError,
    FamilyShapeError,
    FiberSystem,
    InvalidFamily,
    MappingFamily,
    build,
    format_family,
    parse_family,
    product_table,
    validate_family,
    verify_classes_exact,
    verify_fiber_containment,
)
from semitheta.core import is_left_reductive, left_zero, trivial
from semitheta.isomorphism import are_isomorphic
from semitheta.reconstruction import canonical_derivation

from conftest import fixture_path
from oracles import is_associative

CENSUS = {n: list(enumerate_labeled(n)) for n in (1, 2, 3)}


@pytest.fixture
def example2_family(table2):
    return parse_family(fixture_path("example2.family").read_text(), table2)


def test_example2_family_is_valid(example2_family):
    assert validate_family(example2_family) is None


def test_example2_builds_example1(example2_family, example1):
    T = build(example2_family)
    assert T == example1
    assert are_isomorphic(T, example1).mapping == tuple(range(5))
    u, a, v = T.index("u"), T.index("a"), T.index("v")
    assert T.mul(u, a) == v


def test_corrupted_family_reports_violation(example2_family):
    maps = dict(example2_family.maps)
    maps[2, 1] = (4, 4, 4)  # f(0, a, 0) replaced by the constant-0 map
    bad = MappingFamily(example2_family.fibers, maps)
    # x = [0], y = z = [a], held element u: direct u*(a*a) = u*e = u, composed route ends at 0
    assert validate_family(bad) == CocycleViolation(x=2, y=1, z=1, a=2, composed=4, direct=2)
    with pytest.raises(InvalidFamily):
        build(bad)


def test_singleton_fibers_rebuild_base(census):
    for n in (1, 2, 3):
        for S in census[n]:
            fibers = FiberSystem.singletons(S)
            fam = MappingFamily.from_function(fibers, lambda x, y, a: S.mul(x, y))
            T = build(fam)
            assert np.array_equal(T.table, S.table)
            assert verify_fiber_containment(T, fibers)


@pytest.mark.parametrize("g", [(0, 0, 2), (1, 1, 1), (0, 1, 2), (2, 1, 2)])
def test_trivial_base_idempotent_map(g):
    fibers = FiberSystem(trivial(), (0, 0, 0))
    fam = MappingFamily(fibers, {(0, 0): g})
    T = build(fam)
    assert T.table.tolist() == [[g[a]] * 3 for a in range(3)]
    assert all(T.mul(T.mul(a, b), c) == T.mul(a, T.mul(b, c)) for a in range(3) for b in range(3) for c in range(3))
    assert verify_fiber_containment(T, fibers)


def test_trivial_base_non_idempotent_map_fails():
    fibers = FiberSystem(trivial(), (0, 0, 0))
    fam = MappingFamily(fibers, {(0, 0): (1, 2, 0)})
    assert validate_family(fam) is not None


def test_constant_map_one_class():
    fibers = FiberSystem(trivial(), (0, 0, 0))
    T = build(MappingFamily(fibers, {(0, 0): (1, 1, 1)}))
    assert verify_fiber_containment(T, fibers)


def test_exactness(example2_family):
    T = build(example2_family)
    assert verify_fiber_containment(T, example2_family.fibers)
    assert verify_classes_exact(T, example2_family.fibers)


def test_exactness_requires_left_reductive_base():
    base = left_zero(2)
    fibers = FiberSystem.singletons(base)
    T = build(MappingFamily.from_function(fibers, lambda x, y, a: base.mul(x, y)))
    with pytest.raises(ValueError):
        verify_classes_exact(T, fibers)


def test_census_canonical_families():
    for n in (1, 2, 3):
        for T in CENSUS[n]:
            d = canonical_derivation(T)
            assert validate_family(d.family) is None
            built = build(d.family)
            assert verify_fiber_containment(built, d.fibers)
            if is_left_reductive(d.quotient):
                assert verify_classes_exact(built, d.fibers)


def test_exactness_over_left_reductive_bases():
    # every census T whose quotient is left reductive: fibers are exactly the theta-classes
    count = 0
    for n in (1, 2, 3):
        for T in CENSUS[n]:
            d = canonical_derivation(T)
            if is_left_reductive(d.quotient):
                count += 1
                assert verify_classes_exact(build(d.family), d.fibers)
    assert count > 0


# ---------------------------------------------------------------------------
# the cocycle law holds exactly when the raw product table is associative


@st.composite
def corrupted_canonical(draw):
    n = draw(st.integers(1, 3))
    T = draw(st.sampled_from(CENSUS[n]))
    fam = canonical_derivation(T).family
    fibers = fam.fibers
    S = fibers.base
    x = draw(st.integers(0, S.order - 1))
    y = draw(st.integers(0, S.order - 1))
    img = list(fam.maps[x, y])
    i = draw(st.integers(0, len(img) - 1))
    img[i] = draw(st.sampled_from(fibers.members(S.mul(x, y))))
    maps = dict(fam.maps)
    maps[x, y] = tuple(img)
    return MappingFamily(fibers, maps)


@settings(max_examples=300, deadline=None)
@given(corrupted_canonical())
def test_corruption_detected_iff_associativity_breaks(fam):
    raw = product_table(fam).tolist()
    violation = validate_family(fam)
    assert (violation is None) == is_associative(raw)
    if violation is None:
        assert build(fam).order == fam.fibers.carrier_size


@st.composite
def random_family(draw):
    n = draw(st.integers(1, 2))
    S = draw(st.sampled_from(CENSUS[n]))
    sizes = [draw(st.integers(1, 2)) for _ in range(n)]
    fiber_of = tuple(x for x in range(n) for _ in range(sizes[x]))
    fibers = FiberSystem(S, fiber_of)
    maps = {}
    for x in range(n):
        for y in range(n):
            target = fibers.members(S.mul(x, y))
            maps[x, y] = tuple(draw(st.sampled_from(target)) for _ in fibers.members(x))
    return MappingFamily(fibers, maps)


@settings(max_examples=300, deadline=None)
@given(random_family())
def test_random_families(fam):
    raw = product_table(fam).tolist()
    ok = validate_family(fam) is None
    assert ok == is_associative(raw)
    if ok:
        T = build(fam)
        assert verify_fiber_containment(T, fam.fibers)
        if is_left_reductive(fam.fibers.base):
            assert verify_classes_exact(T, fam.fibers)


# ---------------------------------------------------------------------------
# shapes and text format


def test_shape_errors(table2):
    fibers = FiberSystem.singletons(table2)
    good = MappingFamily.from_function(fibers, lambda x, y, a: table2.mul(x, y))
    missing = dict(good.maps)
    del missing[0, 0]
    with pytest.raises(FamilyShapeError, match="no map"):
        validate_family(MappingFamily(fibers, missing))
    wrong_target = dict(good.maps)
    wrong_target[0, 0] = (1,)
    with pytest.raises(FamilyShapeError, match="outside fiber"):
        validate_family(MappingFamily(fibers, wrong_target))
    wrong_size = dict(good.maps)
    wrong_size[0, 0] = (0, 0)
    with pytest.raises(FamilyShapeError, match="images"):
        validate_family(MappingFamily(fibers, wrong_size))


def test_empty_fiber_rejected(table2):
    with pytest.raises(ValueError, match="empty"):
        FiberSystem(table2, (0, 1, 1))


def test_family_text_round_trip(example2_family, table2):
    text = format_family(example2_family)
    assert parse_family(text, table2) == example2_family
    assert text.splitlines()[:2] == ["family 3 5", "fibers : 0 1 2 2 2"]


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("famly 3 5\n", 1),
        ("family 2 2\n", 1),
        ("family 3 3\nfibers : 0 1\n", 2),
        ("family 3 3\nfibers : 0 1 2\nmap 0 0 0\n", 3),
        ("family 3 3\nfibers : 0 1 2\nmap 0 x : 0\n", 3),
        ("family 3 3\nfibers : 0 1 2\nbogus : 1\n", 3),
    ],
)
def test_family_parse_errors(text, line, table2):
    with pytest.raises(FamilyFormatError) as info:
        parse_family(text, table2)
    assert info.value.line == line


def test_family_parse_shape_error(table2):
    with pytest.raises(FamilyShapeError):
        parse_family("family 3 3\nfibers : 0 1 2\nmap 0 0 : 0\n", table2)
