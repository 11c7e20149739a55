"""Elimination of the greatest letter ``c``.

The derived alphabet ``X`` consists of the right combs ``(a c^n)``, ``a != c``.
Words not starting with ``c`` span a half-shuffle subalgebra ``Z``, and every
element of the shuffle algebra is a shuffle polynomial in ``c`` with
coefficients in ``Z`` (plus scalars for the pure powers ``c^k``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .hall import HallSet
from .magma import Tree, eval_tree, format_tree, node, right_comb
from .products import half_shuffle, shuffle, shuffle_power
from .words import (
    EMPTY,
    FreeElement,
    Word,
    element_to_json,
    fraction_str,
    project_positive,
)


@dataclass(frozen=True, order=True)
class XLetter:
    """The tree ``(base c^height) = (...((base, c), c)..., c)``."""

    base: int
    height: int

    def __post_init__(self):
        if self.height < 0:
            raise ValueError("height must be non-negative")

    @property
    def degree(self) -> int:
        return self.height + 1

    def tree(self, c: int) -> Tree:
        if self.base == c:
            raise ValueError("the base of an X-letter must differ from c")
        return right_comb(self.base, c, self.height)

    def __str__(self) -> str:
        return f"({self.base}c^{self.height})"


def _check(a: int, c: int) -> None:
    if a == c:
        raise ValueError(f"letter {a} coincides with the eliminated letter c")


def closed_forms(a: int, n: int, c: int) -> tuple[FreeElement, FreeElement, FreeElement]:
    """Lie bracket, Hall integral and iterated area of ``(a c^n)`` as words."""
    _check(a, c)
    if n < 0:
        raise ValueError("n must be non-negative")
    lie = FreeElement(
        ((c,) * k + (a,) + (c,) * (n - k), (-1) ** k * math.comb(n, k)) for k in range(n + 1)
    )
    fact = math.factorial(n)
    acn = (a,) + (c,) * n
    integral = FreeElement.word(acn, fact)
    if n == 0:
        return lie, integral, FreeElement.letter(a)
    ar = FreeElement([(acn, fact), ((c, a) + (c,) * (n - 1), -fact)])
    return lie, integral, ar


def closed_forms_by_tree(a: int, n: int, c: int) -> tuple[FreeElement, FreeElement, FreeElement]:
    t = right_comb(a, c, n)
    return tuple(eval_tree(t, p) for p in ("lie", "half-shuffle", "area"))


def acn_relation_check(a: int, n: int, c: int) -> tuple[FreeElement, FreeElement]:
    """Residuals of the two integral/area relations on ``(a c^n)``.

    First: ``<(ac^n) = area(ac^n)/(n+1) + n/(n+1) c sh <(ac^{n-1})``.
    Second: ``<(ac^n) = 1/(n+1) sum_k c^{sh k} sh area(ac^{n-k})``.
    """
    _check(a, c)
    if n < 1:
        raise ValueError("the relations need n >= 1")
    C = FreeElement.letter(c)
    _, integral, ar = closed_forms(a, n, c)
    _, prev, _ = closed_forms(a, n - 1, c)
    first = ar / (n + 1) + shuffle(C, prev) * Fraction(n, n + 1)
    second = FreeElement.zero()
    for k in range(n + 1):
        second = second + shuffle(shuffle_power(C, k), closed_forms(a, n - k, c)[2])
    second = second / (n + 1)
    return integral - first, integral - second


def is_in_Z(f: FreeElement, c: int) -> bool:
    """True iff ``f`` has no empty-word part and no word of its support starts with ``c``."""
    if f[EMPTY] != 0:
        return False
    return all(w[0] != c for w in project_positive(f))


@dataclass
class SeriesInC:
    """``f = sum_k c^{sh k} sh (z_k + s_k e)`` with ``z_k`` in ``Z``.

    ``scalar_slots[k]`` holds ``s_k``; pure powers ``c^k = c^{sh k}/k!`` live
    there and ``s_0`` carries ``<f, e>``.
    """

    c: int
    coefficients: list[FreeElement] = field(default_factory=list)
    scalar_slots: list[Fraction] = field(default_factory=list)

    def _grow(self, k: int) -> None:
        while len(self.coefficients) <= k:
            self.coefficients.append(FreeElement.zero())
            self.scalar_slots.append(Fraction(0))

    def reconstruct(self) -> FreeElement:
        C = FreeElement.letter(self.c)
        out = FreeElement.zero()
        for k, (z, s) in enumerate(zip(self.coefficients, self.scalar_slots)):
            part = z + FreeElement.word(EMPTY, s) if s else z
            if not part.is_zero():
                out = out + shuffle(shuffle_power(C, k), part)
        return out

    def to_json(self) -> dict:
        return {
            "c": self.c,
            "coefficients": [element_to_json(z) for z in self.coefficients],
            "scalar_slots": [fraction_str(s) for s in self.scalar_slots],
        }


def _leading_c(w: Word, c: int) -> int:
    n = 0
    while n < len(w) and w[n] == c:
        n += 1
    return n


def decompose_series(f: FreeElement, c: int) -> SeriesInC:
    """Peel words ``c^n v`` by decreasing ``n`` using ``c^{sh n} sh v = n! c^n v + (fewer leading c)``."""
    out = SeriesInC(c)
    out._grow(0)
    out.scalar_slots[0] = f[EMPTY]
    rest = project_positive(f)
    C = FreeElement.letter(c)
    while not rest.is_zero():
        top = max(_leading_c(w, c) for w in rest)
        out._grow(top)
        batch = [(w, coef) for w, coef in rest.items() if _leading_c(w, c) == top]
        fact = math.factorial(top)
        for w, coef in batch:
            v = w[top:]
            share = coef / fact
            if v:
                out.coefficients[top] = out.coefficients[top] + FreeElement.word(v, share)
            else:
                out.scalar_slots[top] += share
        zs = FreeElement((w[top:], coef / fact) for w, coef in batch)
        rest = rest - (shuffle(shuffle_power(C, top), zs) if top else zs)
        assert all(_leading_c(w, c) < top for w in rest)
    return out


# -- J_c ----------------------------------------------------------------------

def j_c_letter(x: XLetter, c: int) -> FreeElement:
    """``(a c^n) -> (1/n) <(a c^n) = (n-1)! a c^n`` for ``n > 0`` and ``a`` for ``n = 0``."""
    _check(x.base, c)
    if x.height == 0:
        return FreeElement.letter(x.base)
    return FreeElement.word((x.base,) + (c,) * x.height, math.factorial(x.height - 1))


def j_c(xword: Sequence[XLetter], c: int) -> FreeElement:
    """Half-shuffle homomorphism on X-words: ``J(x w) = J(x) < J(w)``, ``J(empty) = e``."""
    out = FreeElement.unit()
    for x in reversed(tuple(xword)):
        out = half_shuffle(j_c_letter(x, c), out)
    return out


# -- X-tree reading of Hall trees ------------------------------------------------

def _comb(t: Tree, c: int) -> Optional[XLetter]:
    n = 0
    while not t.is_leaf and t.right.is_leaf and t.right.letter == c:
        t, n = t.left, n + 1
    if t.is_leaf and t.letter != c:
        return XLetter(t.letter, n)
    return None


def x_parse(t: Tree, c: int):
    """Read ``t`` as a tree over ``X``; ``None`` if some ``c`` is not in a right comb.

    Returns an ``XLetter`` or a nested pair of X-trees.
    """
    x = _comb(t, c)
    if x is not None:
        return x
    if t.is_leaf:
        return None
    left, right = x_parse(t.left, c), x_parse(t.right, c)
    if left is None or right is None:
        return None
    return (left, right)


def x_tree_to_tree(x, c: int) -> Tree:
    if isinstance(x, XLetter):
        return x.tree(c)
    return node(x_tree_to_tree(x[0], c), x_tree_to_tree(x[1], c))


def format_x_tree(x) -> str:
    if isinstance(x, XLetter):
        return str(x)
    return f"({format_x_tree(x[0])},{format_x_tree(x[1])})"


@dataclass
class HallXReport:
    c: int
    checked: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def hall_x_compatibility(H: HallSet) -> HallXReport:
    """Every Hall tree except ``c`` itself re-parses into an X-tree that maps back to it."""
    c_leaf = H.greatest_letter
    c = c_leaf.letter
    failures = []
    checked = 0
    for t in H.trees:
        if t == c_leaf:
            continue
        checked += 1
        x = x_parse(t, c)
        if x is None or x_tree_to_tree(x, c) != t:
            failures.append(format_tree(t))
    return HallXReport(c, checked, failures)
