from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfshuffle.areas import (
    AreaPoly,
    areapoly_from_json,
    areapoly_to_json,
    beta,
    beta_recursive,
    check_rewriter,
    check_word_rewrites,
    eval_area_poly,
    hall_area_rank_report,
    rewrite_area_of_monomial,
    word_to_area_poly,
)
from halfshuffle.hall import generate_hall
from halfshuffle.magma import iterated_area, leaf, node, parse_tree
from halfshuffle.products import area, shuffle
from halfshuffle.words import FreeElement

from conftest import E, words

T = parse_tree
half = Fraction(1, 2)


def test_beta_closed_form_and_recursion():
    prev = None
    for k in range(1, 51):
        b = beta(k)
        assert b == Fraction(-(k - 1), k + 1) == beta_recursive(k)
        assert -1 < b <= 0
        if prev is not None:
            assert b < prev
        prev = b
    assert beta(1) == 0 and beta(2) == Fraction(-1, 3)


def test_beta_domain():
    with pytest.raises(ValueError):
        beta(0)


def test_eval_area_poly_examples():
    p = AreaPoly.monomial([T("(1,2)")], half) + AreaPoly.monomial([T("1"), T("2")], half)
    assert eval_area_poly(p) == E("12")
    assert eval_area_poly(AreaPoly.unit()) == FreeElement.unit()
    assert eval_area_poly(AreaPoly.monomial([T("(1,2)")])) == E("12 - 21")


def test_monomials_are_multisets():
    a = AreaPoly.monomial([T("2"), T("(1,2)"), T("1")])
    b = AreaPoly.monomial([T("1"), T("2"), T("(1,2)")])
    assert a == b
    assert a.shuffle_degree == 3


def test_rewrite_base_case():
    A, A1 = T("(1,3)"), T("2")
    r = rewrite_area_of_monomial(A, [A1])
    assert r.leading == 0
    assert r.remainder == AreaPoly.monomial([node(A, A1)])
    assert eval_area_poly(r.poly) == area(iterated_area(A), iterated_area(A1))


def test_rewrite_two_letters():
    a, b, c = leaf(1), leaf(2), leaf(3)
    r = rewrite_area_of_monomial(c, [a, b])
    assert r.leading == Fraction(-1, 3)
    third = Fraction(1, 3)
    expected = (
        AreaPoly.monomial([a, node(c, b)], third)
        + AreaPoly.monomial([b, node(c, a)], third)
        + AreaPoly.monomial([node(node(c, b), a)], third)
        + AreaPoly.monomial([node(node(c, a), b)], third)
    )
    assert r.remainder == expected
    assert r.remainder.shuffle_degree <= 2


def test_rewrite_needs_a_factor():
    with pytest.raises(ValueError):
        rewrite_area_of_monomial(leaf(1), [])


@pytest.mark.parametrize("d, n_max, count", [(2, 4, 28), (3, 3, None)])
def test_rewriter_sound_on_letters(d, n_max, count):
    checked, failures = check_rewriter(d, n_max)
    assert failures == []
    if count is not None:
        assert checked == count


@given(st.lists(st.integers(1, 3).map(leaf), min_size=1, max_size=3), st.integers(1, 3))
def test_rewriter_leading_and_degree(M, a):
    A = node(leaf(a), leaf(1 + a % 3))
    r = rewrite_area_of_monomial(A, M)
    value = FreeElement.unit()
    for t in M:
        value = shuffle(value, iterated_area(t))
    assert eval_area_poly(r.poly) == area(iterated_area(A), value)
    assert r.remainder.shuffle_degree <= len(M)
    if not eval_area_poly(AreaPoly.monomial((A, *M))).is_zero():
        assert r.leading == beta(len(M))


def test_word_to_area_poly_examples():
    p = word_to_area_poly((1, 2))
    assert p == AreaPoly.monomial([T("(1,2)")], half) + AreaPoly.monomial([T("1"), T("2")], half)
    assert word_to_area_poly((1,)) == AreaPoly.monomial([T("1")])
    p = word_to_area_poly((1, 2, 1))
    assert eval_area_poly(p) == E("121")
    assert p.shuffle_degree == 3
    assert word_to_area_poly(()) == AreaPoly.unit()


@given(words(d=2, max_len=5))
def test_word_rewrite_sound(w):
    p = word_to_area_poly(w)
    assert eval_area_poly(p) == FreeElement.word(w)
    assert p.shuffle_degree == len(w)


def test_word_rewrites_exhaustive():
    count, failures = check_word_rewrites(2, 5)
    assert count == 62 and failures == []


def test_json_roundtrip():
    p = word_to_area_poly((1, 2, 2))
    assert areapoly_from_json(areapoly_to_json(p)) == p


def test_rank_report():
    H = generate_hall(2, "lyndon", 4)
    rows = hall_area_rank_report(2, 4, H)
    assert [(r.degree, r.dimension) for r in rows] == [(1, 2), (2, 4), (3, 8), (4, 16)]
    assert all(r.full_rank and r.relations == [] for r in rows)
    assert rows[0].rank == 2
    assert rows[0].to_json()["rank"] == 2
