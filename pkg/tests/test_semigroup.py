import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monocurve.errors import (InvalidInputError, InvalidPivotError,
                              MustNormalizeError)
from monocurve.semigroup import (MembershipTable, SemigroupSpec, apery,
                                 canonical_factorization, canonical_key,
                                 contains, factorizations, frobenius,
                                 normalize)

from oracles import (brute_apery, brute_factorizations, brute_frobenius,
                     brute_members)


def test_normalize_already_reduced():
    S = normalize((30, 32, 35, 40))
    assert S.generators == (30, 32, 35, 40)
    assert S.content == 1
    assert S.reduced


def test_normalize_extracts_gcd():
    S = normalize((4, 6, 10))
    assert S.generators == (2, 3, 5)
    assert S.content == 2
    assert not S.reduced


def test_normalize_sorts():
    assert normalize((35, 30, 40, 32)).generators == (30, 32, 35, 40)


def test_normalize_records_duplicates():
    S = normalize((6, 4, 6, 10))
    assert S.generators == (2, 3, 5)
    assert S.removed_duplicates == (3,)


def test_normalize_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        normalize(())
    with pytest.raises(InvalidInputError):
        normalize((5,))
    with pytest.raises(InvalidInputError):
        normalize((0, 3))
    with pytest.raises(InvalidInputError):
        normalize((-2, 3))
    with pytest.raises(InvalidInputError):
        normalize((4, 4))  # single distinct generator after dedup
    with pytest.raises(InvalidInputError):
        normalize(tuple(range(10, 19)))  # nine distinct generators


def test_contains_small_cases():
    assert not contains(normalize((2, 3)), 1)
    S = normalize((30, 32, 35, 40))
    assert contains(S, 70)
    assert not contains(S, 38)
    assert contains(S, 0)
    with pytest.raises(InvalidInputError):
        contains(S, -1)


def test_contains_matches_oracle():
    for gens in [(30, 32, 35, 40), (2, 3), (7, 11, 13), (5, 9, 21, 22)]:
        S = normalize(gens)
        member = brute_members(gens, 300)
        for m in range(301):
            assert contains(S, m) == member[m], (gens, m)


def test_frobenius_sylvester():
    assert frobenius(normalize((2, 3))) == 1
    assert frobenius(normalize((3, 5))) == 7


def test_frobenius_matches_oracle():
    for gens in [(30, 32, 35, 40), (7, 11, 13), (6, 10, 15), (23, 25, 28, 33)]:
        assert frobenius(normalize(gens)) == brute_frobenius(gens)


def test_frobenius_whole_line():
    assert frobenius(normalize((1, 2))) == -1


def test_frobenius_requires_coprime():
    with pytest.raises(MustNormalizeError):
        frobenius(SemigroupSpec((2, 4)))


def test_frobenius_gap_plus_one_is_member():
    S = normalize((30, 32, 35, 40))
    f = frobenius(S)
    assert not contains(S, f)
    for k in range(1, 200):
        assert contains(S, f + k)


def test_apery_examples():
    assert apery(normalize((2, 3)), 2) == {0, 3}
    assert apery(normalize((2, 3)), 3) == {0, 2, 4}
    assert apery(normalize((3, 5)), 3) == {0, 5, 10}


def test_apery_matches_oracle():
    for gens, x in [((30, 32, 35, 40), 30), ((7, 11, 13), 7), ((3, 5), 5)]:
        assert apery(normalize(gens), x) == brute_apery(gens, x)


def test_apery_properties():
    S = normalize((7, 11, 13))
    ap = apery(S, 11)
    assert len(ap) == 11
    assert 0 in ap
    assert sorted(a % 11 for a in ap) == list(range(11))
    for a in ap:
        assert a - 11 < 0 or not contains(S, a - 11)


def test_apery_invalid_pivot():
    with pytest.raises(InvalidPivotError):
        apery(normalize((30, 32, 35, 40)), 31)
    with pytest.raises(InvalidPivotError):
        apery(normalize((2, 3)), 0)


def test_factorizations_examples():
    S = normalize((30, 32, 35, 40))
    assert [f.exponents for f in factorizations(S, 70)] == [(0, 0, 2, 0), (1, 0, 0, 1)]
    assert [f.exponents for f in factorizations(S, 60)] == [(2, 0, 0, 0)]
    assert [f.exponents for f in factorizations(S, 0)] == [(0, 0, 0, 0)]
    assert factorizations(S, 38) == ()


def test_factorizations_match_oracle_and_are_lex_sorted():
    for gens in [(30, 32, 35, 40), (2, 3), (4, 9, 11), (3, 5, 7, 8, 11)]:
        S = normalize(gens)
        for m in range(0, 150, 7):
            got = [f.exponents for f in factorizations(S, m)]
            assert got == sorted(brute_factorizations(gens, m))
            for f in factorizations(S, m):
                assert f.degree == m
                assert sum(e * a for e, a in zip(f.exponents, gens)) == m


def test_factorizations_nonempty_iff_member():
    S = normalize((5, 9, 21, 22))
    for m in range(150):
        assert bool(factorizations(S, m)) == contains(S, m)


def test_membership_table_grows_geometrically():
    t = MembershipTable((30, 32, 35, 40))
    first = t.bound
    t.ensure(first + 1)
    assert t.bound >= 2 * first


def test_contains_far_beyond_table_uses_frobenius():
    S = normalize((30, 32, 35, 40))
    assert contains(S, 10 ** 12)
    assert S.table.bound < 10 ** 6  # table finished at the run, not sieved out


def test_table_as_bool_array():
    t = MembershipTable((2, 3))
    arr = t.as_bool_array(10)
    assert list(arr) == [True, False, True, True, True, True, True, True, True, True, True]


@given(st.lists(st.integers(min_value=1, max_value=50), min_size=2, max_size=5),
       st.integers(min_value=0, max_value=200))
@settings(max_examples=60, deadline=None)
def test_contains_permutation_and_scaling_invariant(gens, m):
    try:
        S = normalize(gens)
    except InvalidInputError:
        return
    S_perm = normalize(tuple(reversed(gens)))
    assert contains(S, m) == contains(S_perm, m)
    S_scaled = normalize(tuple(3 * g for g in gens))
    assert S_scaled.generators == S.generators


def test_canonical_factorization_minimizes_key():
    S = normalize((30, 32, 35, 40))
    for m in [60, 70, 120, 160, 190, 230]:
        facts = [f.exponents for f in factorizations(S, m)]
        best = canonical_factorization(S, m)
        assert best.exponents == min(facts, key=canonical_key)
    assert canonical_factorization(S, 38) is None


def test_canonical_factorization_respects_allowed():
    S = normalize((30, 32, 35, 40))
    # degree 160 restricted to x2 only: the 5*32 factorization
    got = canonical_factorization(S, 160, allowed=[1])
    assert got.exponents == (0, 5, 0, 0)
    assert canonical_factorization(S, 160, allowed=[2]) is None
