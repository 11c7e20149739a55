"""Hall sets, Hall-word factorisation and Lazard depths.

Two ancestral orders are provided:

``lyndon``
    trees compared by their foliage in alphabetical order; the resulting
    Hall trees are the standard bracketings of Lyndon words.
``degree-lex``
    the esig-style order: trees of larger degree come first, and trees of equal
    degree compare lexicographically on ``(left, right)``.

Both are generated from the same membership criterion, so every query in this
module works for either.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from sympy import divisors, mobius

from .magma import Tree, foliage, leaf, node
from .words import Word, format_word

ORDERS = ("lyndon", "degree-lex")


def _lyndon_key(t: Tree):
    return foliage(t)


@lru_cache(maxsize=None)
def _degree_lex_key(t: Tree):
    if t.is_leaf:
        return (-1, t.letter)
    return (-t.degree, _degree_lex_key(t.left), _degree_lex_key(t.right))


@dataclass(frozen=True)
class HallOrder:
    name: str
    key: Callable[[Tree], object] = field(repr=False, compare=False)

    def lt(self, s: Tree, t: Tree) -> bool:
        return self.key(s) < self.key(t)

    def le(self, s: Tree, t: Tree) -> bool:
        return self.key(s) <= self.key(t)


def hall_order(name: str) -> HallOrder:
    if name == "lyndon":
        return HallOrder("lyndon", _lyndon_key)
    if name in ("degree-lex", "degree_lex", "esig"):
        return HallOrder("degree-lex", _degree_lex_key)
    raise ValueError(f"unknown Hall order {name!r}; expected one of {ORDERS}")


@dataclass(frozen=True, eq=False)
class HallSet:
    """All Hall trees up to ``max_degree`` for a given order.

    ``trees`` is sorted increasingly in the Hall order; ``word_index`` maps
    each Hall word back to its tree.
    """

    d: int
    order: HallOrder
    max_degree: int
    trees_by_degree: dict[int, list[Tree]]
    trees: list[Tree]
    word_index: dict[Word, Tree]
    rank: dict[Tree, int]

    def __contains__(self, t: Tree) -> bool:
        return t in self.rank

    def __iter__(self):
        return iter(self.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def lt(self, s: Tree, t: Tree) -> bool:
        return self.order.lt(s, t)

    def counts(self) -> dict[int, int]:
        return {n: len(ts) for n, ts in self.trees_by_degree.items()}

    @property
    def greatest_letter(self) -> Tree:
        return max((leaf(a) for a in range(1, self.d + 1)), key=self.order.key)


def is_hall_pair(h1: Tree, h2: Tree, order: HallOrder) -> bool:
    """Membership criterion for ``(h1, h2)`` given that ``h1, h2`` are Hall."""
    if not order.lt(h1, h2):
        return False
    return h1.is_leaf or order.le(h2, h1.right)


def generate_hall(d: int, order: str | HallOrder = "lyndon", max_degree: int = 4) -> HallSet:
    if d < 1 or max_degree < 1:
        raise ValueError("need d >= 1 and max_degree >= 1")
    if isinstance(order, str):
        order = hall_order(order)
    by_deg: dict[int, list[Tree]] = {1: [leaf(a) for a in range(1, d + 1)]}
    for n in range(2, max_degree + 1):
        level = []
        for p in range(1, n):
            for h1 in by_deg[p]:
                for h2 in by_deg[n - p]:
                    if is_hall_pair(h1, h2, order):
                        level.append(node(h1, h2))
        by_deg[n] = sorted(level, key=order.key)
    by_deg[1].sort(key=order.key)
    trees = sorted((t for ts in by_deg.values() for t in ts), key=order.key)
    word_index = {}
    for t in trees:
        w = foliage(t)
        if w in word_index:
            raise AssertionError(f"foliage not injective on {format_word(w)}")
        word_index[w] = t
    return HallSet(
        d=d,
        order=order,
        max_degree=max_degree,
        trees_by_degree=by_deg,
        trees=trees,
        word_index=word_index,
        rank={t: i for i, t in enumerate(trees)},
    )


def witt_dimension(d: int, n: int) -> int:
    """Number of Hall trees of degree ``n`` over ``d`` letters (Moebius sum)."""
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    total = sum(mobius(k) * d ** (n // k) for k in divisors(n))
    return int(total) // n


# -- factorisation ------------------------------------------------------------

def duval(w: Word) -> list[Word]:
    """Chen-Fox-Lyndon factorisation as a non-increasing list of Lyndon words."""
    factors = []
    n, i = len(w), 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            factors.append(w[i : i + j - k])
            i += j - k
    return factors


def _group(factors: list) -> list[tuple]:
    out: list[list] = []
    for f in factors:
        if out and out[-1][0] == f:
            out[-1][1] += 1
        else:
            out.append([f, 1])
    return [(f, k) for f, k in out]


def lyndon_factorize(w: Word) -> list[tuple[Word, int]]:
    """Decreasing Lyndon factorisation with multiplicities, e.g.
    ``233212222111 -> [(233, 1), (2, 1), (12222, 1), (1, 3)]``."""
    w = tuple(w)
    if not w:
        raise ValueError("cannot factorize the empty word")
    return _group(duval(w))


def is_lyndon(w: Word) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def standard_bracketing(w: Word) -> Tree:
    """Lyndon tree of a Lyndon word: split off the longest proper Lyndon suffix."""
    w = tuple(w)
    if not is_lyndon(w):
        raise ValueError(f"{format_word(w)} is not a Lyndon word")
    return _std(w)


@lru_cache(maxsize=None)
def _std(w: Word) -> Tree:
    if len(w) == 1:
        return leaf(w[0])
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return node(_std(w[:i]), _std(w[i:]))
    raise AssertionError("unreachable")


def _factorizations(w: Word, H: HallSet):
    """All decreasing (non-increasing, grouped) Hall factorisations of ``w``."""
    key = H.order.key
    index = H.word_index

    @lru_cache(maxsize=None)
    def search(i: int, bound: Optional[Tree]) -> tuple:
        if i == len(w):
            return ((),)
        out = []
        for j in range(i + 1, min(len(w), i + H.max_degree) + 1):
            t = index.get(w[i:j])
            if t is None or (bound is not None and key(t) > key(bound)):
                continue
            for rest in search(j, t):
                out.append((t,) + rest)
        return tuple(out)

    return [_group(list(seq)) for seq in search(0, None)]


def hall_factorize(w: Word, H: HallSet) -> list[tuple[Tree, int]]:
    """Unique factorisation ``w = f(h1)^k1 ... f(hn)^kn`` with ``h1 > ... > hn``."""
    w = tuple(w)
    if not w:
        raise ValueError("cannot factorize the empty word")
    if H.order.name == "lyndon":
        out = []
        for u, k in lyndon_factorize(w):
            if u not in H.word_index:
                raise ValueError(
                    f"Hall word {format_word(u)} exceeds max_degree {H.max_degree}"
                )
            out.append((H.word_index[u], k))
        return out
    found = _factorizations(w, H)
    if not found:
        raise ValueError(f"no Hall factorisation of {format_word(w)} within max_degree {H.max_degree}")
    return found[0]


def count_factorizations(w: Word, H: HallSet) -> int:
    """Number of decreasing factorisations found by exhaustive search (should be 1)."""
    return len(_factorizations(tuple(w), H))


def tree_of_hall_word(w: Word, H: HallSet) -> Tree:
    w = tuple(w)
    try:
        return H.word_index[w]
    except KeyError:
        raise ValueError(f"{format_word(w)} is not a Hall word of this Hall set") from None


# -- Lazard decomposition -----------------------------------------------------

@dataclass(frozen=True)
class Lazard:
    h1: Tree
    h2: Tree
    k: int
    alpha: Fraction
    accumulated: Fraction


def lazard(h: Tree, H: Optional[HallSet] = None) -> Lazard:
    """``h = (h1 h2^k)`` with ``h1`` a letter or ``h1'' != h2``; ``alpha = 1/k``."""
    if H is not None and h not in H:
        raise ValueError(f"{h} is not in the Hall set")
    if h.is_leaf:
        raise ValueError("a letter has no Lazard decomposition; use accumulated_depth")
    h2, t, k = h.right, h, 0
    while not t.is_leaf and t.right == h2:
        t, k = t.left, k + 1
    return Lazard(h1=t, h2=h2, k=k, alpha=Fraction(1, k), accumulated=accumulated_depth(h))


def lazard_depth(h: Tree) -> Fraction:
    if h.is_leaf:
        return Fraction(1)
    h2, t, k = h.right, h, 0
    while not t.is_leaf and t.right == h2:
        t, k = t.left, k + 1
    return Fraction(1, k)


@lru_cache(maxsize=None)
def accumulated_depth(h: Tree) -> Fraction:
    """Product of Lazard depths down the tree; 1 on letters."""
    if h.is_leaf:
        return Fraction(1)
    return lazard_depth(h) * accumulated_depth(h.left) * accumulated_depth(h.right)


def factor_string(factors: list[tuple[Tree, int]]) -> str:
    return " ".join(
        format_word(foliage(t)) + (f"^{k}" if k > 1 else "") for t, k in factors
    )


def factorial_product(factors) -> int:
    return math.prod(math.factorial(k) for _, k in factors)


# -- consistency checks -----------------------------------------------------------

def last_factor_failures(H: HallSet) -> list[Tree]:
    """Hall trees ``h`` of degree >= 2 for which the last factor of ``v`` is not ``h''``,
    where ``f(h) = a v``. The list is empty for a genuine Hall set."""
    bad = []
    for t in H.trees:
        if t.is_leaf:
            continue
        v = foliage(t)[1:]
        if hall_factorize(v, H)[-1][0] != t.right:
            bad.append(t)
    return bad


@dataclass
class WittRow:
    d: int
    order: str
    degree: int
    generated: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.generated == self.expected


def witt_check(d: int, max_degree: int, order: str = "lyndon") -> tuple[list[WittRow], list[Tree]]:
    """Generated counts against the Moebius formula, plus :func:`last_factor_failures`."""
    H = generate_hall(d, order, max_degree)
    rows = [
        WittRow(d, H.order.name, n, len(H.trees_by_degree[n]), witt_dimension(d, n))
        for n in range(1, max_degree + 1)
    ]
    return rows, last_factor_failures(H)
