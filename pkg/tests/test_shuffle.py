import itertools

import pytest
from hypothesis import given, settings, strategies as st

from renormlab.errors import NotABijection, NotACycle, NotUnimodal, Renormalizable, NotSuperattracting
from renormlab.shuffle import (
    CHI, CHI_PRIME, GAMMA, ReturnHom, Shuffle, SignedSemigroup, compare_itineraries, is_shuffle,
    parse_cycle, shuffle_from_kneading, shuffle_of_center, sigma3_n, star_product, validate_shuffle,
)
from oracles import brute_force_class

CLASSES = {NotABijection: "bijection", Renormalizable: "renormalizable", NotACycle: "cycle", NotUnimodal: "unimodal"}


def classify(perm):
    try:
        validate_shuffle(perm)
    except tuple(CLASSES) as exc:
        return CLASSES[type(exc)]
    return "ok"


@pytest.mark.parametrize("p", range(2, 8))
def test_validate_matches_brute_force(p):
    bad = [perm for perm in itertools.permutations(range(1, p + 1)) if classify(perm) != brute_force_class(perm)]
    assert bad == []


def test_small_examples():
    assert validate_shuffle((2, 1)).immediately_renormalizable
    assert validate_shuffle((3, 1, 2)).critical_index == 2
    with pytest.raises(Renormalizable) as info:
        validate_shuffle((3, 4, 1, 2))
    assert info.value.q == 2


def test_not_a_bijection():
    with pytest.raises(NotABijection):
        validate_shuffle((1, 1, 2))


def test_shuffle_of_center():
    assert shuffle_of_center(-1.0, 2).perm == (2, 1)
    assert shuffle_of_center(-1.7548776662466927, 3).perm == (3, 1, 2)
    with pytest.raises(NotSuperattracting):
        shuffle_of_center(0.0, 2)


def test_sigma3_n_period_and_kneading():
    for n in (1, 2, 3, 5):
        s = sigma3_n(n)
        assert s.p == 3 * n + 2
        assert s.kneading() == (-1, 1, -1) * n + (-1, 0)


def test_kneading_round_trip():
    for n in (1, 4):
        s = sigma3_n(n)
        assert shuffle_from_kneading(s.kneading()) == s


def test_star_product():
    s2 = validate_shuffle((2, 1))
    tuned = star_product(s2, s2)
    assert tuned.perm == (4, 3, 1, 2)
    assert tuned.p == 4


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1, 2)]), st.sampled_from([(2, 1), (3, 1, 2)]), st.sampled_from([(2, 1), (3, 1, 2)]))
def test_star_product_associative_and_multiplicative(a, b, c):
    a, b, c = (validate_shuffle(x) for x in (a, b, c))
    left = star_product(star_product(a, b), c)
    assert left.perm == star_product(a, star_product(b, c)).perm
    assert left.p == a.p * b.p * c.p


def test_compare_itineraries_order():
    assert compare_itineraries((-1, 1), (-1, -1)) != 0
    assert compare_itineraries((1, 0), (1, 0)) == 0


def test_cycle_text_round_trip():
    for n in (1, 3):
        s = sigma3_n(n)
        assert parse_cycle(s.to_text()) == s
    assert parse_cycle("(1 3 2)").perm == (3, 1, 2)


def test_semigroup_and_hom_text():
    assert SignedSemigroup.from_text(GAMMA.to_text()) == GAMMA
    for chi in (CHI, CHI_PRIME):
        assert ReturnHom.from_text(chi.to_text()) == chi


@settings(max_examples=50, deadline=None)
@given(st.permutations(list(range(1, 7))))
def test_is_shuffle_matches_oracle(perm):
    assert is_shuffle(perm) == (brute_force_class(tuple(perm)) == "ok")
