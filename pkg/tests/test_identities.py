import random

import pytest
from hypothesis import given

from halfshuffle.identities import (
    IDENTITIES,
    arity,
    letter_tuples,
    output_degree,
    random_element,
    random_tuple,
    requires_positive,
    verify,
    vol,
)
from halfshuffle.products import area, shuffle
from halfshuffle.words import FreeElement

from conftest import E, elements, positive_elements

a, b, c = E("1"), E("2"), E("3")


def test_area_jacobi_letters():
    assert vol(a, b, c) == E("-123 + 132 + 213 - 231 - 312 + 321")
    assert verify("area-jacobi", [a, b, c]).is_zero()


def test_chain_rule_with_units():
    f = E("12 - 3*e + 2")
    e = FreeElement.unit()
    assert verify("chain-rule", [f, e, e]).is_zero()


def test_shuffle_pullout_letters():
    assert area(c, shuffle(a, b)) * 3 == E("-3*123 - 3*132 - 3*213 - 3*231 + 3*312 + 3*321")
    assert verify("shuffle-pullout", [a, b, c]).is_zero()


def test_permutation_shuffle_example():
    assert verify("permutation-shuffle", [E("1"), E("2"), E("12")]).is_zero()


def test_arity_and_positivity_errors():
    with pytest.raises(ValueError):
        verify("chain-rule", [a, b])
    with pytest.raises(ValueError):
        verify("tortkara-2", [a, b, c])
    with pytest.raises(ValueError):
        verify("permutation-shuffle", [a])
    with pytest.raises(ValueError):
        verify("zinbiel-positive", [a, b, E("e + 3")])
    with pytest.raises(ValueError):
        verify("no-such-identity", [a, b, c])


def test_table():
    assert arity("tortkara-2") == 4
    assert arity("integration-by-parts") == 2
    assert arity("permutation-shuffle") is None
    assert requires_positive("tortkara-1") and not requires_positive("chain-rule")


@pytest.mark.parametrize("name", IDENTITIES)
def test_all_letter_tuples(name):
    ns = (2, 3, 4) if name == "permutation-shuffle" else (3,)
    for n in ns:
        for args in letter_tuples(name, 3, n):
            assert verify(name, list(args)).is_zero(), (name, args)


@pytest.mark.parametrize("name", IDENTITIES)
def test_random_tuples(name):
    rng = random.Random(IDENTITIES.index(name))
    for _ in range(25):
        args = random_tuple(rng, name, 3, max_len=3)
        assert verify(name, args).is_zero()


def test_left_nesting_would_fail():
    # the permutation sum must nest to the right; the left-nested sum is off by (n-1)!
    from itertools import permutations

    from halfshuffle.products import half_shuffle, shuffle_many

    fs = [E("1"), E("2"), E("3")]
    left = FreeElement.zero()
    for p in permutations(fs):
        left = left + half_shuffle(half_shuffle(p[0], p[1]), p[2])
    assert left == shuffle_many(*fs) * 2


@given(elements(max_len=2), elements(max_len=2), elements(max_len=2))
def test_identities_on_full_algebra(f, g, h):
    for name in ("chain-rule", "modified-zinbiel", "shuffle-pullout", "area-jacobi"):
        assert verify(name, [f, g, h]).is_zero()
    assert verify("integration-by-parts", [f, g]).is_zero()


@given(positive_elements(max_len=2), positive_elements(max_len=2), positive_elements(max_len=2))
def test_identities_on_positive_part(f, g, h):
    for name in ("zinbiel-positive", "tortkara-1"):
        assert verify(name, [f, g, h]).is_zero()


def test_zinbiel_fails_without_positivity_correction():
    # the unit term of the modified law is needed when g and h carry scalars
    f, g, h = E("1"), E("e"), E("e")
    from halfshuffle.products import half_shuffle

    lhs = half_shuffle(half_shuffle(f, g), h)
    rhs = half_shuffle(f, half_shuffle(g, h)) + half_shuffle(f, half_shuffle(h, g))
    assert lhs != rhs
    assert verify("modified-zinbiel", [f, g, h]).is_zero()


def test_random_generation_budget():
    rng = random.Random(0)
    for _ in range(50):
        args = random_tuple(rng, "tortkara-1", 3)
        assert output_degree("tortkara-1", [x.degree for x in args]) <= 9
        assert all(x[()] == 0 for x in args)
    f = random_element(random.Random(1), 3, 4)
    assert f == random_element(random.Random(1), 3, 4)
