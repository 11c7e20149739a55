from fractions import Fraction
from itertools import product

import pytest

from halfshuffle.hall import (
    ORDERS,
    accumulated_depth,
    count_factorizations,
    generate_hall,
    hall_factorize,
    is_lyndon,
    last_factor_failures,
    lazard,
    lyndon_factorize,
    tree_of_hall_word,
    witt_check,
    witt_dimension,
)
from halfshuffle.magma import foliage, leaf, parse_tree, right_comb, subtrees
from halfshuffle.words import parse_word


def fol(t):
    return "".join(map(str, foliage(t)))


@pytest.fixture(scope="module", params=ORDERS)
def H3(request):
    return generate_hall(3, request.param, 6)


def test_lyndon_d2_deg3():
    H = generate_hall(2, "lyndon", 3)
    assert {fol(t) for t in H} == {"1", "2", "12", "112", "122"}
    assert H.counts() == {1: 2, 2: 1, 3: 2}


def test_letters_only():
    H = generate_hall(2, "lyndon", 1)
    assert H.trees == [leaf(1), leaf(2)]


def test_d3_degree_two():
    H = generate_hall(3, "lyndon", 2)
    assert {fol(t) for t in H.trees_by_degree[2]} == {"12", "13", "23"}


@pytest.mark.parametrize("d, n, expected", [(2, 1, 2), (2, 6, 9), (3, 2, 3), (2, 10, 99), (3, 7, 312)])
def test_witt_dimension(d, n, expected):
    assert witt_dimension(d, n) == expected


def test_witt_dimension_brute_force():
    # Lyndon words of length n, enumerated directly
    for d, n in [(2, 5), (2, 6), (3, 4)]:
        count = sum(is_lyndon(w) for w in product(range(1, d + 1), repeat=n))
        assert count == witt_dimension(d, n)


@pytest.mark.parametrize(
    "word, expected",
    [
        ("233212222111", [("233", 1), ("2", 1), ("12222", 1), ("1", 3)]),
        ("12", [("12", 1)]),
        ("21", [("2", 1), ("1", 1)]),
    ],
)
def test_lyndon_factorize(word, expected):
    assert lyndon_factorize(parse_word(word)) == [(parse_word(u), k) for u, k in expected]


def test_lyndon_factorize_rejects_empty():
    with pytest.raises(ValueError):
        lyndon_factorize(())


def test_hall_factorize_examples():
    L = generate_hall(2, "lyndon", 4)
    D = generate_hall(2, "degree-lex", 4)
    assert hall_factorize(parse_word("12"), L) == [(parse_tree("(1,2)"), 1)]
    for H in (L, D):
        assert hall_factorize(parse_word("11"), H) == [(leaf(1), 2)]
    assert hall_factorize(parse_word("21"), D) == [(leaf(2), 1), (leaf(1), 1)]
    assert count_factorizations(parse_word("21"), D) == 1


def test_hall_factorize_degree_bound():
    H = generate_hall(2, "lyndon", 2)
    with pytest.raises(ValueError):
        hall_factorize(parse_word("112"), H)


@pytest.mark.parametrize(
    "word, text", [("122", "((1,2),2)"), ("12222", "((((1,2),2),2),2)"), ("1", "1")]
)
def test_tree_of_hall_word(word, text):
    H = generate_hall(2, "lyndon", 5)
    assert tree_of_hall_word(parse_word(word), H) == parse_tree(text)


def test_tree_of_non_hall_word():
    H = generate_hall(2, "lyndon", 4)
    with pytest.raises(ValueError):
        tree_of_hall_word(parse_word("21"), H)


@pytest.mark.parametrize(
    "text, h1, h2, k, acc",
    [
        ("(1,2)", "1", "2", 1, Fraction(1)),
        ("((((1,2),2),2),2)", "1", "2", 4, Fraction(1, 24)),
        ("((2,3),3)", "2", "3", 2, Fraction(1, 2)),
    ],
)
def test_lazard(text, h1, h2, k, acc):
    z = lazard(parse_tree(text))
    assert (z.h1, z.h2, z.k) == (parse_tree(h1), parse_tree(h2), k)
    assert z.alpha == Fraction(1, k)
    assert z.accumulated == acc


def test_lazard_on_letter():
    with pytest.raises(ValueError):
        lazard(leaf(1))
    assert accumulated_depth(leaf(1)) == 1


def test_right_comb_depth():
    import math

    for n in range(7):
        assert accumulated_depth(right_comb(1, 2, n)) == Fraction(1, math.factorial(n))


# -- invariants over generated sets ---------------------------------------------------

def test_counts_match_witt(H3):
    for n, ts in H3.trees_by_degree.items():
        assert len(ts) == witt_dimension(3, n)


def test_membership_closed_ancestral_injective(H3):
    for t in H3:
        assert all(s in H3 for s in subtrees(t))
        if not t.is_leaf:
            assert H3.lt(t, t.right)
            assert H3.lt(t.left, t.right)
    assert len({foliage(t) for t in H3}) == len(H3)


def test_tree_of_word_inverts_foliage(H3):
    for t in H3:
        assert tree_of_hall_word(foliage(t), H3) == t


def test_factorization_roundtrip(H3):
    for n in range(1, 7):
        for w in product((1, 2, 3), repeat=n):
            fs = hall_factorize(w, H3)
            assert sum((foliage(t) * k for t, k in fs), ()) == w
            assert all(H3.lt(b, a) for (a, _), (b, _) in zip(fs, fs[1:]))


def test_last_factor_is_right_child(H3):
    assert last_factor_failures(H3) == []


@pytest.mark.parametrize("order", ORDERS)
def test_witt_check_large(order):
    for d, n in [(2, 10), (3, 7)]:
        rows, bad = witt_check(d, n, order)
        assert all(r.ok for r in rows)
        assert bad == []
