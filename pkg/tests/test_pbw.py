import random
from fractions import Fraction

import pytest
from hypothesis import given

from halfshuffle.hall import generate_hall
from halfshuffle.identities import random_element
from halfshuffle.magma import foliage, leaf, parse_tree
from halfshuffle.pbw import (
    STRATEGIES,
    HallMonomial,
    dual_basis_element,
    dual_basis_via_integrals,
    dual_of_hall_word,
    expand_in_dual_basis,
    hall_monomial_of,
    hallpoly_from_json,
    hallpoly_to_json,
    pbw_element,
    verify_duality,
)
from halfshuffle.products import shuffle
from halfshuffle.words import FreeElement, all_words, pairing, parse_word

from conftest import E, positive_elements


@pytest.fixture(scope="module")
def L2():
    return generate_hall(2, "lyndon", 6)


@pytest.fixture(scope="module")
def L3():
    return generate_hall(3, "lyndon", 5)


@pytest.mark.parametrize("w, expected", [("12", "12 - 21"), ("21", "21"), ("11", "11")])
def test_pbw_element(L2, w, expected):
    assert pbw_element(parse_word(w), L2) == E(expected)


@pytest.mark.parametrize("text, expected", [("(1,2)", "12"), ("((1,2),2)", "122"), ("1", "1")])
def test_dual_of_hall_word(L2, text, expected):
    for s in STRATEGIES:
        assert dual_of_hall_word(parse_tree(text), L2, s) == E(expected)


def test_dual_of_non_hall_tree(L2):
    with pytest.raises(ValueError):
        dual_of_hall_word(parse_tree("(2,1)"), L2)


@pytest.mark.parametrize("w, expected", [("21", "12 + 21"), ("11", "11"), ("e", "e")])
def test_dual_basis_element(L2, w, expected):
    assert dual_basis_element(parse_word(w), L2) == E(expected)


def test_degree_bound(L2):
    # 1111112 is itself a Hall word of degree 7
    with pytest.raises(ValueError):
        dual_basis_element((1,) * 6 + (2,), L2)
    with pytest.raises(ValueError):
        pbw_element((1,) * 6 + (2,), L2)
    # 2111111 factors into letters
    assert pbw_element((2,) + (1,) * 6, L2) == FreeElement.word((2,) + (1,) * 6)


def test_via_integrals_small(L2):
    r = dual_basis_via_integrals(parse_word("12"), L2)
    assert r.coefficient == 1
    assert r.monomial == HallMonomial(((parse_tree("(1,2)"), 1),))
    assert r.value == E("12")
    r = dual_basis_via_integrals(parse_word("11"), L2)
    assert r.coefficient == Fraction(1, 2)
    assert r.monomial == HallMonomial(((leaf(1), 2),))
    assert r.value == E("11")


def test_worked_word_normalizer(L3):
    w = parse_word("233212222111")
    r = dual_basis_via_integrals(w, L3)
    assert r.coefficient == Fraction(1, 288)
    assert [k for _, k in r.monomial.factors] == [1, 1, 1, 3]
    # duality pins the normalizer: <S_w, P_w> = 1
    assert pairing(r.value, pbw_element(w, L3)) == 1
    assert r.value == dual_basis_element(w, L3)


def test_duality_small(L2):
    rep = verify_duality(L2, 3)
    assert rep.n_words == 15 and rep.passed
    assert pairing(dual_basis_element((1, 2), L2), pbw_element((1, 2), L2)) == 1
    assert pairing(dual_basis_element((2, 1), L2), pbw_element((1, 2), L2)) == 0


@pytest.mark.parametrize("order", ["lyndon", "degree-lex"])
def test_duality_both_orders(order):
    H = generate_hall(2, order, 5)
    rep = verify_duality(H, 5)
    assert rep.passed
    if order == "lyndon":
        assert rep.triangularity_warnings == []


def test_strategies_agree(L2):
    H3 = generate_hall(3, "lyndon", 5)
    for H in (L2, H3):
        for t in H:
            vals = [dual_of_hall_word(t, H, s) for s in STRATEGIES]
            assert vals[0] == vals[1] == vals[2]


@pytest.mark.parametrize(
    "f, expected",
    [
        ("21", {(): 0, ("12",): -1, ("2", "1"): 1}),
        ("e", {(): 1}),
        ("12", {("12",): 1}),
    ],
)
def test_expand_examples(L2, f, expected):
    p = expand_in_dual_basis(E(f), L2)
    got = {tuple("".join(map(str, w)) for w in _words(m)): c for m, c in p.terms}
    want = {k: v for k, v in expected.items() if v}
    assert got == want
    assert p.evaluate() == E(f)


def _words(m):
    return [foliage(t) for t, _ in m.factors]


def test_expand_reconstructs_random(L2):
    rng = random.Random(5)
    for _ in range(20):
        f = random_element(rng, 2, 5, n_terms=3)
        p = expand_in_dual_basis(f, L2)
        assert p.evaluate() == f
        assert hallpoly_from_json(hallpoly_to_json(p)) == p


def test_expansion_coefficients_are_dual_pairings(L2):
    # with S_w = normalizer * monomial, a coefficient divided by the normalizer is <f, P_w>
    f = E("2*121 - 1/3*22 + e")
    p = dict(expand_in_dual_basis(f, L2).terms)
    for w in all_words(2, 3):
        r = dual_basis_via_integrals(w, L2)
        assert p.get(hall_monomial_of(w, L2), 0) == pairing(f, pbw_element(w, L2)) * r.coefficient


@given(positive_elements(d=2, max_len=3), positive_elements(d=2, max_len=3))
def test_lie_annihilation(f, g):
    H = generate_hall(2, "lyndon", 6)
    sh = shuffle(f, g)
    for t in H:
        if t.degree >= 2:
            assert pairing(sh, pbw_element(foliage(t), H)) == 0


def test_empty_word_dual():
    H = generate_hall(2, "lyndon", 3)
    assert dual_basis_via_integrals((), H).value == FreeElement.unit()
