"""Bilinear products on :class:`FreeElement`.

Word-level kernels return integer multiplicities and are memoised with
``functools.lru_cache`` (the cache is guarded by the interpreter, so it is safe
to share between threads). Element-level products clear denominators first and
accumulate with Python ints, which keeps the hot loops free of ``Fraction``
arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable

from .words import EMPTY, FreeElement, Word, project_positive

WordKernel = Callable[[Word, Word], tuple]


@lru_cache(maxsize=None)
def shuffle_words(u: Word, v: Word) -> tuple:
    """All interleavings of ``u`` and ``v`` as ``((word, multiplicity), ...)``."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    if v < u:
        return shuffle_words(v, u)
    acc: dict[Word, int] = {}
    a, b = u[:1], v[:1]
    for w, c in shuffle_words(u[1:], v):
        w = a + w
        acc[w] = acc.get(w, 0) + c
    for w, c in shuffle_words(u, v[1:]):
        w = b + w
        acc[w] = acc.get(w, 0) + c
    return tuple(acc.items())


@lru_cache(maxsize=None)
def half_shuffle_words(u: Word, v: Word) -> tuple:
    """``u < v = a (u' sh v)`` for ``u = a u'``; zero when ``u`` is empty."""
    if not u:
        return ()
    a = u[:1]
    return tuple((a + w, c) for w, c in shuffle_words(u[1:], v))


def concat_words(u: Word, v: Word) -> tuple:
    return ((u + v, 1),)


def _common_denominator(f: FreeElement) -> int:
    return reduce(math.lcm, (c.denominator for _, c in f.items()), 1)


def _integral(f: FreeElement) -> tuple[list, int]:
    den = _common_denominator(f)
    return [(u, (c * den).numerator) for u, c in f.items()], den


def _accumulate(acc: dict, fi: list, gi: list, kernel: WordKernel, sign: int = 1) -> None:
    get = acc.get
    for u, a in fi:
        for v, b in gi:
            ab = sign * a * b
            for w, m in kernel(u, v):
                acc[w] = get(w, 0) + ab * m


def _finish(acc: dict, den: int) -> FreeElement:
    if den == 1:
        return FreeElement._raw({w: Fraction(n) for w, n in acc.items() if n})
    return FreeElement._raw({w: Fraction(n, den) for w, n in acc.items() if n})


def bilinear(f: FreeElement, g: FreeElement, kernel: WordKernel) -> FreeElement:
    """Extend a word kernel with integer multiplicities bilinearly."""
    if f.is_zero() or g.is_zero():
        return FreeElement.zero()
    (fi, df), (gi, dg) = _integral(f), _integral(g)
    acc: dict[Word, int] = {}
    _accumulate(acc, fi, gi, kernel)
    return _finish(acc, df * dg)


def tensor(f: FreeElement, g: FreeElement) -> FreeElement:
    """Concatenation product, extended bilinearly."""
    return bilinear(f, g, concat_words)


def lie_bracket(f: FreeElement, g: FreeElement) -> FreeElement:
    return tensor(f, g) - tensor(g, f)


def half_shuffle(f: FreeElement, g: FreeElement) -> FreeElement:
    """Left half shuffle ``f < g``.

    On words ``a u' < v = a (u' sh v)``, ``e < g = 0`` and ``u < e = u``; hence
    ``f < e = f - <f, e> e`` for arbitrary ``f``.
    """
    return bilinear(f, g, half_shuffle_words)


def shuffle(f: FreeElement, g: FreeElement) -> FreeElement:
    """Shuffle product computed from word interleavings (unit ``e``)."""
    return bilinear(f, g, shuffle_words)


def shuffle_from_half(f: FreeElement, g: FreeElement) -> FreeElement:
    """``f < g + g < f + <f,e><g,e> e``; an independent route to :func:`shuffle`."""
    out = half_shuffle(f, g) + half_shuffle(g, f)
    s = f[EMPTY] * g[EMPTY]
    if s:
        out = out + FreeElement.word(EMPTY, s)
    return out


def area(f: FreeElement, g: FreeElement) -> FreeElement:
    """Commutator of the half shuffle: ``f < g - g < f``."""
    if f.is_zero() or g.is_zero():
        return FreeElement.zero()
    # both terms share the denominator, so they are summed as integers
    (fi, df), (gi, dg) = _integral(f), _integral(g)
    acc: dict[Word, int] = {}
    _accumulate(acc, fi, gi, half_shuffle_words)
    _accumulate(acc, gi, fi, half_shuffle_words, -1)
    return _finish(acc, df * dg)


def shuffle_power(f: FreeElement, k: int) -> FreeElement:
    if k < 0:
        raise ValueError("shuffle power must be non-negative")
    out = FreeElement.unit()
    for _ in range(k):
        out = shuffle(out, f)
    return out


def shuffle_many(*elements: FreeElement) -> FreeElement:
    return reduce(shuffle, elements, FreeElement.unit())


def tensor_power(f: FreeElement, k: int) -> FreeElement:
    out = FreeElement.unit()
    for _ in range(k):
        out = tensor(out, f)
    return out


def half_shuffle_by_definition(f: FreeElement, g: FreeElement) -> FreeElement:
    """Half shuffle by the two-term recursion ``a f' < g = a (f' < g + g < f')``.

    Slow reference used to cross-check :func:`half_shuffle`; ``g`` may carry an
    empty-word component.
    """
    acc = FreeElement.zero()
    for u, cu in f.items():
        for v, cv in g.items():
            acc = acc + _hs_def(u, v) * (cu * cv)
    return acc


@lru_cache(maxsize=None)
def _hs_def(u: Word, v: Word) -> FreeElement:
    if not u:
        return FreeElement.zero()
    if not v:
        return FreeElement.word(u)
    if len(u) == 1:
        # a < v with f' = e: a (e < v + v < e) = a v
        return FreeElement.word(u + v)
    a, rest = u[:1], u[1:]
    inner = _hs_def(rest, v) + _hs_def(v, rest)
    return FreeElement((a + w, c) for w, c in inner.items())


__all__ = [
    "area",
    "bilinear",
    "half_shuffle",
    "half_shuffle_by_definition",
    "half_shuffle_words",
    "lie_bracket",
    "project_positive",
    "shuffle",
    "shuffle_from_half",
    "shuffle_many",
    "shuffle_power",
    "shuffle_words",
    "tensor",
    "tensor_power",
]
