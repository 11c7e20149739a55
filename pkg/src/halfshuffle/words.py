"""Words over a finite alphabet and their finite rational linear combinations.

Letters are positive integers ``1..d``. A word is a plain tuple of letters,
the empty tuple being the empty word ``e``. A :class:`FreeElement` is a
finitely supported map ``word -> Fraction`` kept in canonical form (no zero
coefficients), so equality of elements is equality of their term maps.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

Word = tuple  # tuple[int, ...]
EMPTY: Word = ()

Scalar = Union[int, Fraction]


def word_key(w: Word) -> tuple:
    """Sort key: shorter words first, then lexicographic on letter indices."""
    return (len(w), w)


def parse_word(text: str) -> Word:
    """Parse ``"12321"``, ``"1,12,3"`` or ``"e"`` into a word."""
    text = text.strip()
    if text in ("e", ""):
        return EMPTY
    if "," in text:
        letters = tuple(int(t) for t in text.split(","))
    else:
        if not text.isdigit():
            raise ValueError(f"not a word: {text!r}")
        letters = tuple(int(ch) for ch in text)
    if any(a < 1 for a in letters):
        raise ValueError(f"letters must be positive: {text!r}")
    return letters


def format_word(w: Word) -> str:
    if not w:
        return "e"
    if max(w) <= 9:
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)


def concat(u: Word, v: Word) -> Word:
    return tuple(u) + tuple(v)


def words_of_length(d: int, n: int) -> Iterator[Word]:
    """All words of length ``n`` over ``1..d`` in canonical order."""
    if n == 0:
        yield EMPTY
        return
    for w in words_of_length(d, n - 1):
        for a in range(1, d + 1):
            yield w + (a,)


def all_words(d: int, max_len: int) -> list[Word]:
    out = []
    for n in range(max_len + 1):
        out.extend(words_of_length(d, n))
    return sorted(out, key=word_key)


def fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


class FreeElement:
    """Finite linear combination of words with exact rational coefficients.

    Instances are treated as immutable values. Arithmetic with ``+``, ``-`` and
    scalar ``*`` is supported; the bilinear products live in
    :mod:`halfshuffle.products`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for w, c in items:
            w = tuple(w)
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: Fraction(c) for w, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "FreeElement":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def word(cls, w: Word, coeff: Scalar = 1) -> "FreeElement":
        return cls({tuple(w): coeff})

    @classmethod
    def letter(cls, a: int) -> "FreeElement":
        return cls({(a,): 1})

    @classmethod
    def unit(cls) -> "FreeElement":
        return cls({EMPTY: 1})

    @classmethod
    def zero(cls) -> "FreeElement":
        return cls._raw({})

    # -- mapping-ish access -------------------------------------------------

    def __getitem__(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    coeff = __getitem__

    def items(self):
        return self._terms.items()

    def sorted_items(self) -> list[tuple[Word, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def support(self) -> list[Word]:
        return sorted(self._terms, key=word_key)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Maximal word length in the support (-1 for the zero element)."""
        return max((len(w) for w in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    # -- vector space structure --------------------------------------------

    def __add__(self, other: "FreeElement") -> "FreeElement":
        if not isinstance(other, FreeElement):
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            s = acc.get(w, 0) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        return FreeElement._raw(acc)

    def __neg__(self) -> "FreeElement":
        return FreeElement._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        if not isinstance(other, FreeElement):
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            s = acc.get(w, 0) - c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        return FreeElement._raw(acc)

    def __mul__(self, scalar) -> "FreeElement":
        if isinstance(scalar, FreeElement) or not isinstance(scalar, Rational):
            return NotImplemented
        if scalar == 0:
            return FreeElement.zero()
        s = Fraction(scalar)
        return FreeElement._raw({w: c * s for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "FreeElement":
        return self * (1 / Fraction(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"FreeElement({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def linear_combination(pairs: Iterable[tuple[Scalar, FreeElement]]) -> FreeElement:
    acc: dict[Word, Fraction] = {}
    for s, f in pairs:
        if s == 0:
            continue
        for w, c in f.items():
            acc[w] = acc.get(w, 0) + s * c
    return FreeElement(acc)


def pairing(f: FreeElement, g: FreeElement) -> Fraction:
    """Canonical scalar product: sum of coefficient products over common words."""
    if len(g) < len(f):
        f, g = g, f
    return sum((c * g[w] for w, c in f.items()), Fraction(0))


def project_positive(f: FreeElement) -> FreeElement:
    """Drop the empty-word component: ``f - <f, e> e``."""
    if EMPTY not in f._terms:
        return f
    return FreeElement._raw({w: c for w, c in f.items() if w})


def truncate(f: FreeElement, n: int) -> FreeElement:
    """Keep only words of length at most ``n``."""
    return FreeElement._raw({w: c for w, c in f.items() if len(w) <= n})


def homogeneous_part(f: FreeElement, n: int) -> FreeElement:
    return FreeElement._raw({w: c for w, c in f.items() if len(w) == n})


def reverse_words(f: FreeElement) -> FreeElement:
    return FreeElement._raw({w[::-1]: c for w, c in f.items()})


# -- text form ---------------------------------------------------------------

def format_element(f: FreeElement) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for w, c in f.sorted_items():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = format_word(w) if a == 1 else f"{a}*{format_word(w)}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([0-9,]+|e)\s*")


def parse_element(text: str) -> FreeElement:
    """Parse ``"12 - 2*21 + 3/2*e"`` (also ``"1,10 + 10,1"`` for d > 9)."""
    text = text.strip()
    if text == "0":
        return FreeElement.zero()
    pos, acc = 0, []
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element at {text[pos:]!r}")
        sign, coeff, w = m.groups()
        if pos > 0 and not sign:
            raise ValueError(f"missing operator before {text[pos:]!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        acc.append((parse_word(w), c))
        pos = m.end()
    return FreeElement(acc)


# -- JSON ----------------------------------------------------------------

def element_to_json(f: FreeElement) -> list[dict]:
    return [{"word": format_word(w), "coeff": fraction_str(c)} for w, c in f.sorted_items()]


def element_from_json(data) -> FreeElement:
    if isinstance(data, str):
        data = json.loads(data)
    return FreeElement((parse_word(t["word"]), parse_fraction(t["coeff"])) for t in data)
