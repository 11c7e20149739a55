import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfshuffle.magma import (
    eval_tree,
    foliage,
    format_tree,
    integral,
    iterated_area,
    leaf,
    lie,
    node,
    parse_tree,
    tree,
    tree_from_json,
    tree_to_json,
)
from halfshuffle.products import shuffle
from halfshuffle.words import concat, pairing, parse_word

from conftest import E, positive_elements

trees = st.recursive(
    st.integers(1, 3).map(leaf),
    lambda sub: st.tuples(sub, sub).map(lambda p: node(*p)),
    max_leaves=5,
)


@pytest.mark.parametrize(
    "text, word", [("1", "1"), ("((1,2),2)", "122"), ("((((1,2),2),2),2)", "12222")]
)
def test_foliage(text, word):
    assert foliage(parse_tree(text)) == parse_word(word)


@pytest.mark.parametrize(
    "text, product, expected",
    [
        ("(1,2)", "lie", "12 - 21"),
        ("(1,2)", "half-shuffle", "12"),
        ("((1,2),2)", "half-shuffle", "2*122"),
        # (12 - 21) < 2 - 2 < (12 - 21), expanded by hand
        ("((1,2),2)", "area", "2*122 - 2*212"),
    ],
)
def test_eval_tree(text, product, expected):
    assert eval_tree(parse_tree(text), product) == E(expected)


def test_named_evaluators_and_aliases():
    t = tree(((1, 2), 3))
    assert lie(t) == eval_tree(t, "tensor-bracket")
    assert integral(t) == eval_tree(t, "half-shuffle")
    assert iterated_area(t) == eval_tree(t, "area")


def test_unknown_product():
    with pytest.raises(ValueError):
        eval_tree(leaf(1), "cross")


def test_degree():
    t = parse_tree("((1,2),(3,(1,1)))")
    assert t.degree == 5
    assert leaf(2).degree == 1


def test_text_format_ignores_whitespace():
    assert parse_tree(" ( (1 , 2) ,2 ) ") == parse_tree("((1,2),2)")
    assert format_tree(parse_tree("((1,2),2)")) == "((1,2),2)"


def test_bad_tree_text():
    for bad in ("(1,2", "(1,2))", "(,1)", ""):
        with pytest.raises(ValueError):
            parse_tree(bad)


@given(trees)
def test_text_and_json_roundtrip(t):
    assert parse_tree(format_tree(t)) == t
    assert tree_from_json(tree_to_json(t)) == t


@given(trees, trees)
def test_foliage_is_a_morphism(s, t):
    assert foliage(node(s, t)) == concat(foliage(s), foliage(t))
    assert len(foliage(s)) == s.degree


@given(trees)
def test_evaluations_are_homogeneous(t):
    for p in ("lie", "half-shuffle", "area"):
        assert all(len(w) == t.degree for w in eval_tree(t, p))


@given(trees.filter(lambda t: not t.is_leaf), positive_elements(max_len=2), positive_elements(max_len=3))
def test_lie_elements_annihilate_shuffles(t, f, g):
    assert pairing(shuffle(f, g), lie(t)) == 0
