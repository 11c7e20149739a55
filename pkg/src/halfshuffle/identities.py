"""Residuals of the named product identities.

``verify(name, args)`` returns ``LHS - RHS``; the zero element means the
identity holds for those arguments.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Sequence

from .products import area, half_shuffle, shuffle, shuffle_from_half, shuffle_many
from .words import EMPTY, FreeElement

IDENTITIES = (
    "chain-rule",
    "modified-zinbiel",
    "zinbiel-positive",
    "integration-by-parts",
    "shuffle-pullout",
    "area-jacobi",
    "tortkara-1",
    "tortkara-2",
    "permutation-shuffle",
)


def _e(f: FreeElement) -> Fraction:
    return f[EMPTY]


def _unit(c) -> FreeElement:
    return FreeElement.word(EMPTY, c)


def vol(f: FreeElement, g: FreeElement, h: FreeElement) -> FreeElement:
    return area(area(f, g), h) + area(area(g, h), f) + area(area(h, f), g)


def _chain_rule(f, g, h):
    return half_shuffle(f, shuffle(g, h)) - half_shuffle(half_shuffle(f, g), h)


def _modified_zinbiel(f, g, h):
    rhs = (
        half_shuffle(f, half_shuffle(g, h))
        + half_shuffle(f, half_shuffle(h, g))
        + half_shuffle(f, FreeElement.unit()) * (_e(g) * _e(h))
    )
    return half_shuffle(half_shuffle(f, g), h) - rhs


def _zinbiel(f, g, h):
    rhs = half_shuffle(f, half_shuffle(g, h)) + half_shuffle(f, half_shuffle(h, g))
    return half_shuffle(half_shuffle(f, g), h) - rhs


def _integration_by_parts(f, g):
    # shuffle() interleaves words directly; the right side is built from < only
    return shuffle(f, g) - shuffle_from_half(f, g)


def _shuffle_pullout(f, g, h):
    lhs = area(h, shuffle(f, g)) * 3
    rhs = (
        shuffle(f, area(h, g))
        + shuffle(g, area(h, f))
        - shuffle_many(f, g, h)
        + _unit(_e(f) * _e(g) * _e(h))
        + area(area(h, g), f)
        + area(area(h, f), g)
    )
    return lhs - rhs


def _area_jacobi(f, g, h):
    lhs = vol(f, g, h)
    rhs = -(shuffle(f, area(g, h)) + shuffle(g, area(h, f)) + shuffle(h, area(f, g)))
    return lhs - rhs


def _tortkara_1(f, g, h):
    return area(area(f, g), area(f, h)) - area(f, vol(f, g, h))


def _tortkara_2(f, g, h, i):
    lhs = area(area(f, g), area(i, h)) + area(area(h, g), area(i, f))
    rhs = area(f, vol(g, h, i)) + area(h, vol(g, f, i))
    return lhs - rhs


def nested_half_shuffle(fs: Sequence[FreeElement]) -> FreeElement:
    """``f1 < (f2 < (... < fn))``."""
    acc = fs[-1]
    for x in reversed(fs[:-1]):
        acc = half_shuffle(x, acc)
    return acc


def _permutation_shuffle(*fs):
    # nesting is to the right; the left-nested sum counts each term (n-1)! times
    total = FreeElement.zero()
    for perm in itertools.permutations(fs):
        total = total + nested_half_shuffle(perm)
    return shuffle_many(*fs) - total


# name -> (function, arity or None for variadic >= 2, requires A^{>0}, weights)
# weights[i] is how often argument i enters each term, so that the output
# degree of the identity is sum(weights[i] * degree(arg i)).
_TABLE: dict[str, tuple[Callable, int | None, bool, tuple | None]] = {
    "chain-rule": (_chain_rule, 3, False, None),
    "modified-zinbiel": (_modified_zinbiel, 3, False, None),
    "zinbiel-positive": (_zinbiel, 3, True, None),
    "integration-by-parts": (_integration_by_parts, 2, False, None),
    "shuffle-pullout": (_shuffle_pullout, 3, False, None),
    "area-jacobi": (_area_jacobi, 3, False, None),
    "tortkara-1": (_tortkara_1, 3, True, (2, 1, 1)),
    "tortkara-2": (_tortkara_2, 4, True, None),
    "permutation-shuffle": (_permutation_shuffle, None, True, None),
}


def arity(name: str) -> int | None:
    return _spec(name)[1]


def requires_positive(name: str) -> bool:
    return _spec(name)[2]


def _spec(name: str):
    try:
        return _TABLE[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; expected one of {IDENTITIES}") from None


def verify(name: str, args: Sequence[FreeElement]) -> FreeElement:
    """Residual ``LHS - RHS`` of the identity ``name`` at ``args``."""
    fn, n, positive, _ = _spec(name)
    if n is None:
        if len(args) < 2:
            raise ValueError(f"{name} needs at least two arguments")
    elif len(args) != n:
        raise ValueError(f"{name} takes {n} arguments, got {len(args)}")
    if positive and any(_e(f) != 0 for f in args):
        raise ValueError(f"{name} requires arguments without empty-word component")
    return fn(*args)


# -- random elements ------------------------------------------------------------

def random_element(
    rng: random.Random,
    d: int,
    max_len: int,
    n_terms: int = 2,
    positive: bool = False,
    coeff_range: int = 3,
) -> FreeElement:
    """Uniform words of length <= ``max_len`` with coefficients in ``-3..3``."""
    lo = 1 if positive else 0
    while True:
        terms = []
        for _ in range(n_terms):
            length = rng.randint(lo, max_len)
            w = tuple(rng.randint(1, d) for _ in range(length))
            terms.append((w, rng.randint(-coeff_range, coeff_range)))
        f = FreeElement(terms)
        if not f.is_zero():
            return f


# output-degree caps for bulk random checks; None means uncapped
DEFAULT_BUDGET = {"tortkara-1": 9, "tortkara-2": 8, "permutation-shuffle": 9}


def output_degree(name: str, degrees: Sequence[int]) -> int:
    weights = _spec(name)[3] or (1,) * len(degrees)
    return sum(w * max(n, 0) for w, n in zip(weights, degrees))


def random_tuple(
    rng: random.Random,
    name: str,
    d: int,
    max_len: int = 4,
    n_terms: int = 2,
    n: int = 3,
    budget: int | None | str = "default",
) -> list[FreeElement]:
    """Arguments for ``name``, each of degree <= ``max_len``.

    ``budget`` caps the degree of the identity's output (see
    :func:`output_degree`); tuples over the cap are redrawn. Without it the
    four-fold area identities reach degree 16, whose supports are too large for
    bulk checks.
    """
    k = arity(name) or n
    positive = requires_positive(name)
    if budget == "default":
        budget = DEFAULT_BUDGET.get(name)
    while True:
        args = [random_element(rng, d, max_len, n_terms, positive) for _ in range(k)]
        if budget is None or output_degree(name, [f.degree for f in args]) <= budget:
            return args


def letter_tuples(name: str, d: int, n: int = 3):
    """Every tuple of letters of the identity's arity (``n`` for the variadic one)."""
    k = arity(name) or n
    letters = [FreeElement.letter(a) for a in range(1, d + 1)]
    return itertools.product(letters, repeat=k)
