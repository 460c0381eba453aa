import pytest

from semitheta.census import enumerate_labeled
from semitheta.classification import (
    IdealWitness,
    NoZero,
    collapse_criterion_holds,
    ideals,
    is_ideal,
    is_left_zero_sub,
    leftzero_nilpotent_extension,
    nilpotency_index,
    principal_ideal,
    rees_quotient,
    tower_reaches_universal,
)
from semitheta.core import left_zero, monogenic_nilpotent, right_zero, trivial


def names(S, K):
    return {S.name(a) for a in K}


def test_tower_reaches_universal(example1):
    assert tower_reaches_universal(left_zero(2)) == (True, 1)
    assert tower_reaches_universal(monogenic_nilpotent(3)) == (True, 2)
    assert tower_reaches_universal(example1) == (False, None)
    assert tower_reaches_universal(trivial()) == (True, 1)


def test_ideals(example1):
    found = [names(example1, K) for K in ideals(example1)]
    for K in ({"0"}, {"0", "u", "v"}, {"e", "a", "u", "v", "0"}):
        assert K in found
    assert ideals(left_zero(2)) == [frozenset({0, 1})]
    assert ideals(trivial()) == [frozenset({0})]


def test_ideals_large_order_path():
    # order 7 takes the principal-ideal route; compare with filtering all subsets
    S = monogenic_nilpotent(7)
    brute = sorted(
        (frozenset(a for a in range(7) if m >> a & 1) for m in range(1, 1 << 7) if is_ideal(S, [a for a in range(7) if m >> a & 1])),
        key=lambda K: (len(K), sorted(K)),
    )
    assert ideals(S) == brute
    lz = left_zero(7)
    assert ideals(lz) == [frozenset(range(7))]


def test_ideals_are_unions_of_principal(census):
    for S in census[3]:
        principals = {principal_ideal(S, a) for a in range(3)}
        for K in ideals(S):
            assert K == frozenset().union(*(P for P in principals if P <= K))


def test_is_left_zero_sub(example1):
    zero = example1.index("0")
    assert is_left_zero_sub(example1, {zero})
    assert is_left_zero_sub(left_zero(3), range(3))
    assert not is_left_zero_sub(example1, {example1.index(s) for s in ("0", "u", "v")})


def test_rees_quotient(example1, table2):
    from semitheta.isomorphism import are_isomorphic

    K = {example1.index(s) for s in ("0", "u", "v")}
    Q = rees_quotient(example1, K)
    assert Q.semigroup.names == ("e", "a", "0K")
    assert are_isomorphic(Q.semigroup, table2) is not None
    assert rees_quotient(example1, range(5)).semigroup.order == 1
    N = monogenic_nilpotent(3)
    RN = rees_quotient(N, {2})
    assert RN.semigroup.table.tolist() == N.table.tolist()
    with pytest.raises(ValueError):
        rees_quotient(example1, {0})


def test_nilpotency_index(table2):
    assert nilpotency_index(monogenic_nilpotent(3)) == 3
    assert nilpotency_index(trivial()) == 1
    assert nilpotency_index(table2) is None
    with pytest.raises(NoZero):
        nilpotency_index(left_zero(2))


def test_extension_witness(example1):
    w = leftzero_nilpotent_extension(left_zero(2))
    assert w == IdealWitness(frozenset({0, 1}), True, 1)
    N = monogenic_nilpotent(3)
    w = leftzero_nilpotent_extension(N)
    assert w == IdealWitness(frozenset({2}), True, 3)
    assert w.check(N)
    assert leftzero_nilpotent_extension(example1) is None
    assert leftzero_nilpotent_extension(right_zero(2)) is None


def test_criterion_spot_checks(table2, leftzero2, nilpotent3):
    for S in (table2, leftzero2, nilpotent3):
        assert collapse_criterion_holds(S)
    assert tower_reaches_universal(table2)[0] is False
    assert leftzero_nilpotent_extension(table2) is None


def test_criterion_census(census):
    for n in (1, 2, 3):
        for S in census[n]:
            assert collapse_criterion_holds(S)
            w = leftzero_nilpotent_extension(S)
            if w is not None:
                assert w.check(S)


def test_every_qualifying_ideal_validates(census):
    for S in census[3]:
        for K in ideals(S):
            if is_left_zero_sub(S, K):
                m = nilpotency_index(rees_quotient(S, K).semigroup)
                if m is not None:
                    assert IdealWitness(K, True, m).check(S)


def test_witness_check_rejects_wrong_index():
    N = monogenic_nilpotent(3)
    assert not IdealWitness(frozenset({2}), True, 2).check(N)
    assert not IdealWitness(frozenset({2}), True, 4).check(N)
