"""Shuffle polynomials in iterated areas and their symbolic rewriting.

An :class:`AreaPoly` is a formal rational combination of monomials; each
monomial is a multiset of trees standing for the shuffle product of the
iterated areas of those trees. Trees are stored in an antisymmetric normal
form: ``(s, t)`` with ``s > t`` is replaced by ``-(t, s)`` and ``(t, t)`` by
zero, so equal monomials are recognised as such.

The rewriter never expands into words; :func:`eval_area_poly` does that and is
used only to check results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .hall import HallSet, hall_factorize
from .magma import Tree, format_tree, foliage, iterated_area, leaf, node, parse_tree
from .products import shuffle, shuffle_power
from .words import FreeElement, Word, format_word, fraction_str, parse_fraction, words_of_length

Monomial = tuple  # sorted tuple of canonical trees


def beta(k: int) -> Fraction:
    """Leading coefficient ``-(k - 1)/(k + 1)`` of the area rewriting rule."""
    if k < 1:
        raise ValueError("beta is defined for k >= 1")
    return Fraction(-(k - 1), k + 1)


def beta_recursive(k: int) -> Fraction:
    """Same sequence from ``b_1 = 0``, ``b_k = (b_{k-1} - 1)/(b_{k-1} + 3)``."""
    if k < 1:
        raise ValueError("beta is defined for k >= 1")
    b = Fraction(0)
    for _ in range(k - 1):
        b = (b - 1) / (b + 3)
    return b


# -- normal forms ---------------------------------------------------------------

def tree_sort_key(t: Tree):
    return (t.degree, foliage(t), format_tree(t))


@lru_cache(maxsize=None)
def canonical_tree(t: Tree) -> tuple[int, Optional[Tree]]:
    """``(sign, tree)`` with the area of ``t`` equal to ``sign`` times that of ``tree``."""
    if t.is_leaf:
        return 1, t
    sl, l = canonical_tree(t.left)
    sr, r = canonical_tree(t.right)
    if sl == 0 or sr == 0 or l == r:
        return 0, None
    if tree_sort_key(l) > tree_sort_key(r):
        return -sl * sr, node(r, l)
    return sl * sr, node(l, r)


def _monomial(trees: Iterable[Tree]) -> tuple[int, Monomial]:
    sign, out = 1, []
    for t in trees:
        s, c = canonical_tree(t)
        if s == 0:
            return 0, ()
        sign *= s
        out.append(c)
    return sign, tuple(sorted(out, key=tree_sort_key))


def _add(acc: dict, mono: Monomial, c) -> None:
    if not c:
        return
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def _add_poly(acc: dict, poly: Mapping, scale=1) -> None:
    for m, c in poly.items():
        _add(acc, m, c * scale)


def _shuffle_poly(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2, key=tree_sort_key))
            _add(out, m, c1 * c2)
    return out


def _shuffle_tree(t: Tree, p: Mapping) -> dict:
    s, c = canonical_tree(t)
    if s == 0:
        return {}
    return _shuffle_poly({(c,): Fraction(s)}, p)


# -- the data types -------------------------------------------------------------

@dataclass(frozen=True)
class AreaMonomial:
    """Multiset of trees; the empty monomial denotes ``e``."""

    factors: Monomial = ()

    @classmethod
    def of(cls, trees: Iterable[Tree]) -> tuple[int, "AreaMonomial"]:
        sign, m = _monomial(trees)
        return sign, cls(m)

    @property
    def shuffle_degree(self) -> int:
        return len(self.factors)

    @property
    def degree(self) -> int:
        return sum(t.degree for t in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "e"
        return " sh ".join(f"A{format_tree(t)}" for t in self.factors)


class AreaPoly:
    """Rational combination of :class:`AreaMonomial` in canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        acc: dict = {}
        for m, c in (terms or {}).items():
            m = m.factors if isinstance(m, AreaMonomial) else tuple(m)
            sign, mono = _monomial(m)
            _add(acc, mono, Fraction(c) * sign)
        self._terms = acc

    @classmethod
    def _raw(cls, terms: dict) -> "AreaPoly":
        obj = cls.__new__(cls)
        obj._terms = {m: Fraction(c) for m, c in terms.items() if c}
        return obj

    @classmethod
    def monomial(cls, trees: Sequence[Tree], coeff=1) -> "AreaPoly":
        return cls({tuple(trees): coeff})

    @classmethod
    def unit(cls) -> "AreaPoly":
        return cls._raw({(): Fraction(1)})

    def items(self):
        return [(AreaMonomial(m), c) for m, c in self.sorted_terms()]

    def sorted_terms(self):
        return sorted(
            self._terms.items(),
            key=lambda mc: (len(mc[0]), [tree_sort_key(t) for t in mc[0]]),
        )

    def coefficient(self, trees: Sequence[Tree]) -> Fraction:
        sign, m = _monomial(trees)
        return self._terms.get(m, Fraction(0)) * sign

    @property
    def shuffle_degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def top_part(self) -> "AreaPoly":
        top = self.shuffle_degree
        return AreaPoly._raw({m: c for m, c in self._terms.items() if len(m) == top})

    def without(self, trees: Sequence[Tree]) -> "AreaPoly":
        _, m = _monomial(trees)
        return AreaPoly._raw({k: c for k, c in self._terms.items() if k != m})

    def __add__(self, other: "AreaPoly") -> "AreaPoly":
        acc = dict(self._terms)
        _add_poly(acc, other._terms)
        return AreaPoly._raw(acc)

    def __sub__(self, other: "AreaPoly") -> "AreaPoly":
        acc = dict(self._terms)
        _add_poly(acc, other._terms, -1)
        return AreaPoly._raw(acc)

    def __mul__(self, scalar) -> "AreaPoly":
        return AreaPoly._raw({m: c * scalar for m, c in self._terms.items()})

    __rmul__ = __mul__

    def shuffle(self, other: "AreaPoly") -> "AreaPoly":
        return AreaPoly._raw(_shuffle_poly(self._terms, other._terms))

    def __eq__(self, other) -> bool:
        return isinstance(other, AreaPoly) and self._terms == other._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*[{AreaMonomial(m)}]" for m, c in self.sorted_terms())

    __repr__ = __str__


# -- evaluation -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _eval_monomial(m: Monomial) -> FreeElement:
    out = FreeElement.unit()
    for t in m:
        out = shuffle(out, iterated_area(t))
    return out


def eval_area_poly(p: AreaPoly) -> FreeElement:
    """Replace trees by iterated areas, multiply with the shuffle, sum up."""
    out = FreeElement.zero()
    for m, c in p._terms.items():
        out = out + _eval_monomial(m) * c
    return out


# -- rewriting --------------------------------------------------------------------

def _area_with_monomial(t: Tree, m: Monomial) -> dict:
    """Symbolic ``area(A(t), product of m)`` for a tree ``t`` and any monomial."""
    s, t = canonical_tree(t)
    if s == 0:
        return {}
    if len(m) == 0:
        # area(A, e) = A < e - e < A = A
        return {(t,): Fraction(s)}
    if len(m) == 1:
        s2, u = canonical_tree(node(t, m[0]))
        return {(u,): Fraction(s * s2)} if s2 else {}
    return {k: v * s for k, v in _rewrite(t, m)}


@lru_cache(maxsize=None)
def _rewrite(A: Tree, M: Monomial) -> tuple:
    """Area of ``A`` against a monomial of at least two canonical trees.

    Follows the inductive construction: split off the first factor with the
    shuffle-pullout identity, rotate the obstruction with area-Jacobi, and
    solve for the area that reappears on the right-hand side.
    """
    k = len(M)
    leading = tuple(sorted((A,) + M, key=tree_sort_key))
    if k == 2:
        # shuffle-pullout alone: 3 area(A, f sh g) = f sh area(A, g) + g sh area(A, f)
        #   - A sh f sh g + area(area(A, g), f) + area(area(A, f), g)
        f, g = M
        out: dict = {}
        _add_poly(out, _shuffle_tree(f, _area_with_monomial(A, (g,))), Fraction(1, 3))
        _add_poly(out, _shuffle_tree(g, _area_with_monomial(A, (f,))), Fraction(1, 3))
        _add_poly(out, _area_with_monomial(node(A, g), (f,)), Fraction(1, 3))
        _add_poly(out, _area_with_monomial(node(A, f), (g,)), Fraction(1, 3))
        _add(out, leading, beta(2))
        return tuple(out.items())

    A1, R = M[0], M[1:]
    b_prev = beta(k - 1)

    P1 = _area_with_monomial(A1, R)
    full_small = tuple(sorted((A1,) + R, key=tree_sort_key))
    if P1.get(full_small, 0) != b_prev:
        raise AssertionError("leading coefficient of the inner rewrite is not beta")
    P1_rest = {m: c for m, c in P1.items() if m != full_small}

    R_poly = {R: Fraction(1)}
    Q: dict = {}
    T1, T2 = node(A, A1), node(A1, A)
    _add_poly(Q, _shuffle_tree(T1, R_poly))
    _add_poly(Q, _shuffle_tree(T2, R_poly), -1)
    _add_poly(Q, _area_with_monomial(T1, R))
    _add_poly(Q, _area_with_monomial(T2, R), -1)
    _add_poly(Q, _shuffle_tree(A, P1_rest))
    for m, c in P1_rest.items():
        _add_poly(Q, _area_with_monomial(A, m), -c)

    out = {}
    _add_poly(out, Q, 1 / (b_prev + 3))
    if leading in out:
        raise AssertionError("remainder reached the leading shuffle-degree")
    _add(out, leading, beta(k))
    return tuple(out.items())


@dataclass(frozen=True)
class Rewrite:
    """``area(A, A1 sh ... sh An) = leading * (A sh A1 sh ... sh An) + remainder``."""

    poly: AreaPoly
    leading: Fraction
    remainder: AreaPoly


def rewrite_area_of_monomial(A: Tree, M: Sequence[Tree]) -> Rewrite:
    """Express the area of ``A(A)`` against ``A(A1) sh ... sh A(An)`` symbolically."""
    if len(M) == 0:
        raise ValueError("need at least one factor; area(f, e) is handled by the products module")
    sign, mono = _monomial(M)
    s0, A0 = canonical_tree(A)
    if sign == 0 or s0 == 0:
        return Rewrite(AreaPoly(), Fraction(0), AreaPoly())
    poly = AreaPoly._raw({m: c * sign for m, c in _area_with_monomial(A0, mono).items()}) * s0
    full = (A,) + tuple(M)
    return Rewrite(poly, poly.coefficient(full), poly.without(full))


def area_of_poly(A: Tree, p: AreaPoly) -> AreaPoly:
    """Symbolic area of a single iterated area against a whole polynomial."""
    acc: dict = {}
    for m, c in p._terms.items():
        _add_poly(acc, _area_with_monomial(A, m), c)
    return AreaPoly._raw(acc)


def word_to_area_poly(w: Word) -> AreaPoly:
    """Shuffle polynomial in iterated areas evaluating to the word ``w``.

    Uses ``a v = (area(a, v) + a sh v) / 2`` recursively on the tail.
    """
    return AreaPoly._raw(dict(_word_poly(tuple(w))))


@lru_cache(maxsize=None)
def _word_poly(w: Word) -> tuple:
    if not w:
        return (((), Fraction(1)),)
    a = leaf(w[0])
    Pv = dict(_word_poly(w[1:]))
    acc: dict = {}
    for m, c in Pv.items():
        _add_poly(acc, _area_with_monomial(a, m), c / 2)
    _add_poly(acc, _shuffle_tree(a, Pv), Fraction(1, 2))
    return tuple(acc.items())


# -- bulk checks -------------------------------------------------------------------

@dataclass
class RewriteFailure:
    area_of: Tree
    monomial: tuple
    reason: str


def check_rewriter(d: int, n_max: int) -> tuple[int, list[RewriteFailure]]:
    """All letter instances ``area(a, b1 sh ... sh bn)`` with ``n <= n_max``.

    Each must evaluate to the products-module value, lead with ``beta(n)``
    and leave a remainder of shuffle-degree at most ``n``.
    """
    from itertools import combinations_with_replacement

    from .products import area, shuffle_many

    count, failures = 0, []
    for n in range(1, n_max + 1):
        for a in range(1, d + 1):
            for ms in combinations_with_replacement(range(1, d + 1), n):
                count += 1
                M = tuple(leaf(b) for b in ms)
                r = rewrite_area_of_monomial(leaf(a), M)
                target = area(FreeElement.letter(a), shuffle_many(*(FreeElement.letter(b) for b in ms)))
                if eval_area_poly(r.poly) != target:
                    failures.append(RewriteFailure(leaf(a), M, "evaluation differs"))
                elif r.leading != beta(n):
                    failures.append(RewriteFailure(leaf(a), M, f"leading coefficient {r.leading}"))
                elif r.remainder.shuffle_degree > n:
                    failures.append(RewriteFailure(leaf(a), M, "remainder degree too high"))
    return count, failures


def check_word_rewrites(d: int, max_len: int) -> tuple[int, list[Word]]:
    """Every nonempty word up to ``max_len`` is rebuilt exactly from its area polynomial."""
    count, failures = 0, []
    for n in range(1, max_len + 1):
        for w in words_of_length(d, n):
            count += 1
            p = word_to_area_poly(w)
            if eval_area_poly(p) != FreeElement.word(w) or p.shuffle_degree > n:
                failures.append(w)
    return count, failures


# -- Hall-area conjecture explorer -------------------------------------------------

def hall_area_element(w: Word, H: HallSet) -> FreeElement:
    """``A(h1)^{sh k1} sh ... sh A(hn)^{sh kn}`` over the Hall factorisation of ``w``."""
    out = FreeElement.unit()
    if not w:
        return out
    for t, k in hall_factorize(tuple(w), H):
        out = shuffle(out, shuffle_power(iterated_area(t), k))
    return out


@dataclass
class RankRow:
    degree: int
    dimension: int
    rank: int
    relations: list

    @property
    def full_rank(self) -> bool:
        return self.rank == self.dimension

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "rank": self.rank,
            "relations": [
                {format_word(w): fraction_str(c) for w, c in rel.items()} for rel in self.relations
            ],
        }


def hall_area_rank_report(d: int, n: int, H: HallSet) -> list[RankRow]:
    """Exact rank of the Hall-area monomials against the word basis, per degree."""
    if n > H.max_degree:
        raise ValueError("n exceeds the Hall set degree bound")
    if H.d != d:
        raise ValueError("alphabet size does not match the Hall set")
    report = []
    for m in range(1, n + 1):
        words = list(words_of_length(d, m))
        col = {w: i for i, w in enumerate(words)}
        rows = []
        for w in words:
            row = [Fraction(0)] * len(words)
            for u, c in hall_area_element(w, H).items():
                row[col[u]] = c
            rows.append(row)
        r = linalg.rank(rows)
        relations = []
        if r < len(words):
            for y in linalg.left_nullspace(rows):
                relations.append({w: c for w, c in zip(words, y) if c})
        report.append(RankRow(m, len(words), r, relations))
    return report


# -- JSON --------------------------------------------------------------------------

def areapoly_to_json(p: AreaPoly) -> list:
    return [
        {"coeff": fraction_str(c), "factors": [{"tree": format_tree(t), "power": 1} for t in m]}
        for m, c in p.sorted_terms()
    ]


def areapoly_from_json(data) -> AreaPoly:
    terms: dict = {}
    for item in data:
        trees = []
        for f in item["factors"]:
            trees.extend([parse_tree(f["tree"])] * int(f.get("power", 1)))
        sign, m = _monomial(trees)
        _add(terms, m, parse_fraction(item["coeff"]) * sign)
    return AreaPoly._raw(terms)
