"""PBW basis, its dual basis, and expansion into polynomials in Hall integrals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .hall import HallSet, accumulated_depth, hall_factorize, lazard_depth
from .magma import Tree, format_tree, foliage, integral, lie, parse_tree
from .products import half_shuffle, shuffle, shuffle_power, tensor, tensor_power
from .words import (
    FreeElement,
    Word,
    all_words,
    format_word,
    fraction_str,
    pairing,
    parse_fraction,
    words_of_length,
)

STRATEGIES = ("recursive-tensor", "halfshuffle-recursion", "direct")


@dataclass(frozen=True)
class HallMonomial:
    """Decreasing sequence of ``(Hall tree, multiplicity)`` factors."""

    factors: tuple = ()

    @property
    def degree(self) -> int:
        return sum(t.degree * k for t, k in self.factors)

    def sort_key(self):
        return (self.degree, tuple((foliage(t), k) for t, k in self.factors))

    def evaluate(self) -> FreeElement:
        """Shuffle product of the Hall integrals ``<(h)`` with multiplicities."""
        out = FreeElement.unit()
        for t, k in self.factors:
            out = shuffle(out, shuffle_power(integral(t), k))
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "e"
        return " sh ".join(
            f"<{format_tree(t)}" + (f"^{k}" if k > 1 else "") for t, k in self.factors
        )


@dataclass(frozen=True)
class HallPoly:
    """Finite rational combination of :class:`HallMonomial` (shuffle polynomial
    in Hall integrals). ``terms`` is a tuple of ``(monomial, coeff)`` pairs in
    canonical order without zero coefficients."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> "HallPoly":
        items = [(m, Fraction(c)) for m, c in d.items() if c != 0]
        items.sort(key=lambda mc: mc[0].sort_key())
        return cls(tuple(items))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def evaluate(self) -> FreeElement:
        out = FreeElement.zero()
        for m, c in self.terms:
            out = out + m.evaluate() * c
        return out

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{m}]" for m, c in self.terms)


def _check_degree(w: Word, H: HallSet) -> None:
    # long words are fine as long as each Hall factor is within the bound
    if w:
        hall_factorize(w, H)


def pbw_element(w: Word, H: HallSet) -> FreeElement:
    """``P_w = [h1]^k1 ... [hn]^kn`` over the decreasing Hall factorisation of ``w``."""
    w = tuple(w)
    _check_degree(w, H)
    return _pbw(w, H)


@lru_cache(maxsize=None)
def _pbw(w: Word, H: HallSet) -> FreeElement:
    out = FreeElement.unit()
    if not w:
        return out
    for t, k in hall_factorize(w, H):
        out = tensor(out, tensor_power(lie(t), k))
    return out


# -- dual basis ------------------------------------------------------------

def dual_of_hall_word(h: Tree, H: HallSet, strategy: str = "direct") -> FreeElement:
    """Dual basis element ``S_f(h)`` for a Hall tree ``h``.

    ``recursive-tensor`` uses ``S_{av} = a S_v``, ``halfshuffle-recursion``
    uses ``alpha_h (S_{f(h')} < S_{f(h'')})`` and ``direct`` multiplies the
    Hall integral by the accumulated Lazard depth.
    """
    if h not in H:
        raise ValueError(f"{h} is not in the Hall set")
    if strategy == "recursive-tensor":
        return _dual_tensor(h, H)
    if strategy == "halfshuffle-recursion":
        return _dual_halfshuffle(h, H)
    if strategy == "direct":
        return integral(h) * accumulated_depth(h)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def _dual_tensor(h: Tree, H: HallSet) -> FreeElement:
    w = foliage(h)
    if len(w) == 1:
        return FreeElement.word(w)
    rest = _dual_word(w[1:], H, "recursive-tensor")
    return tensor(FreeElement.word(w[:1]), rest)


def _dual_halfshuffle(h: Tree, H: HallSet) -> FreeElement:
    if h.is_leaf:
        return FreeElement.letter(h.letter)
    inner = half_shuffle(_dual_halfshuffle(h.left, H), _dual_halfshuffle(h.right, H))
    return inner * lazard_depth(h)


@lru_cache(maxsize=None)
def _dual_word(w: Word, H: HallSet, strategy: str) -> FreeElement:
    if not w:
        return FreeElement.unit()
    out = FreeElement.unit()
    norm = 1
    for t, k in hall_factorize(w, H):
        out = shuffle(out, shuffle_power(dual_of_hall_word(t, H, strategy), k))
        norm *= math.factorial(k)
    return out / norm


def dual_basis_element(w: Word, H: HallSet, strategy: str = "direct") -> FreeElement:
    """``S_w = (1 / k1!...kn!) S_f(h1)^{sh k1} sh ... sh S_f(hn)^{sh kn}``; ``S_e = e``."""
    w = tuple(w)
    _check_degree(w, H)
    return _dual_word(w, H, strategy)


@dataclass(frozen=True)
class DualViaIntegrals:
    coefficient: Fraction
    monomial: HallMonomial
    value: FreeElement


def dual_normalizer(factors) -> Fraction:
    """``prod A_h^k / k!`` over the factorisation."""
    c = Fraction(1)
    for t, k in factors:
        c *= accumulated_depth(t) ** k / math.factorial(k)
    return c


def dual_basis_via_integrals(w: Word, H: HallSet) -> DualViaIntegrals:
    """``S_w`` as an explicit rational multiple of a monomial in Hall integrals."""
    w = tuple(w)
    _check_degree(w, H)
    if not w:
        return DualViaIntegrals(Fraction(1), HallMonomial(()), FreeElement.unit())
    factors = tuple(hall_factorize(w, H))
    coeff = dual_normalizer(factors)
    mono = HallMonomial(factors)
    return DualViaIntegrals(coeff, mono, mono.evaluate() * coeff)


def hall_monomial_of(w: Word, H: HallSet) -> HallMonomial:
    if not w:
        return HallMonomial(())
    return HallMonomial(tuple(hall_factorize(tuple(w), H)))


# -- duality checks and expansion ----------------------------------------------

@dataclass
class DualityReport:
    d: int
    order: str
    max_len: int
    n_words: int
    n_pairs: int
    failures: list = field(default_factory=list)
    triangularity_warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "alphabet": self.d,
            "order": self.order,
            "max_length": self.max_len,
            "words": self.n_words,
            "pairs": self.n_pairs,
            "passed": self.passed,
            "failures": [
                {"u": format_word(u), "v": format_word(v), "pairing": fraction_str(p)}
                for u, v, p in self.failures
            ],
            "triangularity_warnings": [format_word(w) for w in self.triangularity_warnings],
        }


def verify_duality(H: HallSet, n: int, strategy: str = "direct", max_failures: int = 20) -> DualityReport:
    """Check ``<S_u, P_v> = delta_{u,v}`` for all words of length at most ``n``.

    Pairs of different length are orthogonal for grading reasons but are still
    evaluated.
    """
    if n > H.max_degree:
        raise ValueError("n exceeds the Hall set degree bound")
    words = all_words(H.d, n)
    S = {w: dual_basis_element(w, H, strategy) for w in words}
    P = {w: pbw_element(w, H) for w in words}
    report = DualityReport(H.d, H.order.name, n, len(words), len(words) ** 2)
    for u in words:
        if S[u][u] != 1:
            report.triangularity_warnings.append(u)
        for v in words:
            p = pairing(S[u], P[v])
            if p != (1 if u == v else 0) and len(report.failures) < max_failures:
                report.failures.append((u, v, p))
    return report


def dual_coefficients(f: FreeElement, H: HallSet) -> dict[Word, Fraction]:
    """Coefficients ``c_w = <f, P_w>`` of ``f`` in the dual basis ``{S_w}``."""
    top = max(f.degree, 0)
    if top > H.max_degree:
        raise ValueError("element degree exceeds the Hall set degree bound")
    lengths = sorted({len(w) for w in f})
    out = {}
    for n in lengths:
        for w in words_of_length(H.d, n):
            c = pairing(f, _pbw(w, H))
            if c:
                out[w] = c
    return out


def expand_in_dual_basis(f: FreeElement, H: HallSet) -> HallPoly:
    """Write ``f`` as a shuffle polynomial in Hall integrals.

    Each word ``w`` contributes ``<f, P_w> * normalizer(w)`` times the monomial
    of Hall integrals over its factorisation, so that ``evaluate()`` of the
    result is ``f`` exactly.
    """
    terms = {}
    for w, c in dual_coefficients(f, H).items():
        mono = hall_monomial_of(w, H)
        norm = dual_normalizer(mono.factors) if w else Fraction(1)
        terms[mono] = terms.get(mono, 0) + c * norm
    return HallPoly.from_dict(terms)


# -- JSON ------------------------------------------------------------------

def monomial_to_json(m: HallMonomial) -> list:
    return [{"tree": format_tree(t), "power": k} for t, k in m.factors]


def hallpoly_to_json(p: HallPoly) -> list:
    return [{"coeff": fraction_str(c), "factors": monomial_to_json(m)} for m, c in p.terms]


def hallpoly_from_json(data: Iterable[dict]) -> HallPoly:
    terms = {}
    for item in data:
        mono = HallMonomial(tuple((parse_tree(f["tree"]), int(f["power"])) for f in item["factors"]))
        terms[mono] = terms.get(mono, 0) + parse_fraction(item["coeff"])
    return HallPoly.from_dict(terms)
