"""Binary planar rooted trees with letter-labelled leaves (the free magma)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Union

from . import products
from .words import FreeElement, Word, format_word


@dataclass(frozen=True)
class Tree:
    """Either a leaf (``letter`` set) or a node with ``left`` and ``right``."""

    letter: Optional[int] = None
    left: Optional["Tree"] = None
    right: Optional["Tree"] = None
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.letter is None:
            if self.left is None or self.right is None:
                raise ValueError("a node needs two children")
            deg = self.left.degree + self.right.degree
        else:
            if self.left is not None or self.right is not None:
                raise ValueError("a leaf has no children")
            if self.letter < 1:
                raise ValueError("letters are positive integers")
            deg = 1
        object.__setattr__(self, "degree", deg)

    @property
    def is_leaf(self) -> bool:
        return self.letter is not None

    def __str__(self) -> str:
        return format_tree(self)

    def __repr__(self) -> str:
        return f"Tree({format_tree(self)})"


def leaf(a: int) -> Tree:
    return Tree(letter=a)


def node(left: Tree, right: Tree) -> Tree:
    return Tree(left=left, right=right)


def tree(spec) -> Tree:
    """Build a tree from nested pairs: ``tree(((1, 2), 2))``."""
    if isinstance(spec, Tree):
        return spec
    if isinstance(spec, int):
        return leaf(spec)
    left, right = spec
    return node(tree(left), tree(right))


def right_comb(a: int, c: int, n: int) -> Tree:
    """The tree ``(a c^n) = (...((a, c), c)..., c)``."""
    t = leaf(a)
    for _ in range(n):
        t = node(t, leaf(c))
    return t


def foliage(t: Tree) -> Word:
    """Leaf labels read left to right."""
    return _foliage(t)


@lru_cache(maxsize=None)
def _foliage(t: Tree) -> Word:
    if t.is_leaf:
        return (t.letter,)
    return _foliage(t.left) + _foliage(t.right)


def subtrees(t: Tree):
    yield t
    if not t.is_leaf:
        yield from subtrees(t.left)
        yield from subtrees(t.right)


# -- evaluation ------------------------------------------------------------

PRODUCTS: dict[str, Callable[[FreeElement, FreeElement], FreeElement]] = {
    "lie": products.lie_bracket,
    "half-shuffle": products.half_shuffle,
    "area": products.area,
}

_ALIASES = {"tensor-bracket": "lie", "bracket": "lie", "halfshuffle": "half-shuffle", "integral": "half-shuffle"}


def _product_name(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in PRODUCTS:
        raise ValueError(f"unknown product {name!r}; expected one of {sorted(PRODUCTS)}")
    return name


def eval_tree(t: Tree, product: str) -> FreeElement:
    """Evaluate ``t`` with ``product`` at every internal node; leaves map to letters."""
    return _eval(t, _product_name(product))


@lru_cache(maxsize=None)
def _eval(t: Tree, product: str) -> FreeElement:
    if t.is_leaf:
        return FreeElement.letter(t.letter)
    return PRODUCTS[product](_eval(t.left, product), _eval(t.right, product))


def lie(t: Tree) -> FreeElement:
    """Lie bracketing ``[t]``."""
    return _eval(t, "lie")


def integral(t: Tree) -> FreeElement:
    """Iterated (Hall) integral: the half shuffle at every node."""
    return _eval(t, "half-shuffle")


def iterated_area(t: Tree) -> FreeElement:
    return _eval(t, "area")


# -- text and JSON forms ------------------------------------------------------

def format_tree(t: Tree) -> str:
    if t.is_leaf:
        return str(t.letter)
    return f"({format_tree(t.left)},{format_tree(t.right)})"


def parse_tree(text: str) -> Tree:
    """Parse ``"(((1,2),2),2)"``; whitespace is ignored."""
    s = "".join(text.split())
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise ValueError(f"unexpected end of tree: {text!r}")
        if s[pos] == "(":
            pos += 1
            left = parse()
            if pos >= len(s) or s[pos] != ",":
                raise ValueError(f"expected ',' in {text!r} at {pos}")
            pos += 1
            right = parse()
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ')' in {text!r} at {pos}")
            pos += 1
            return node(left, right)
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a letter in {text!r} at {pos}")
        return leaf(int(s[start:pos]))

    t = parse()
    if pos != len(s):
        raise ValueError(f"trailing characters in tree {text!r}")
    return t


def tree_to_json(t: Tree) -> Union[dict, list]:
    if t.is_leaf:
        return {"leaf": t.letter}
    return {"node": [tree_to_json(t.left), tree_to_json(t.right)]}


def tree_from_json(data) -> Tree:
    if "leaf" in data:
        return leaf(int(data["leaf"]))
    left, right = data["node"]
    return node(tree_from_json(left), tree_from_json(right))


def foliage_str(t: Tree) -> str:
    return format_word(foliage(t))
