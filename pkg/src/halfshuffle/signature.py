"""Truncated signatures of piecewise-linear paths in double precision.

Signatures follow Chen's convention ``dX = X (x) dgamma``: the coefficient of
``i1...ik`` is the iterated integral with ``i1`` earliest. Two evaluation
routes are provided, a dense one (all words up to level ``n``) and a sparse
per-word dynamic program whose cost is ``O(|w|^2)`` per segment.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .hall import HallSet, factor_string, generate_hall, hall_factorize, lyndon_factorize
from .magma import foliage, format_tree, integral
from .pbw import dual_basis_via_integrals
from .products import half_shuffle, shuffle
from .words import FreeElement, Word, format_word, fraction_str, reverse_words

WORKED_WORD = (2, 3, 3, 2, 1, 2, 2, 2, 2, 1, 1, 1)
# constant often quoted for the worked word in plain iterated integrals; it is
# 1/(4! 2!) and leaves out the 1/3! of the cubed letter as well as the factors
# 24 and 2 relating the two long Hall integrals to their plain integrals
QUOTED_CONSTANT = Fraction(1, 48)


# -- paths ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PiecewisePath:
    """Polygonal path through ``points`` (shape ``(N, d)``, ``N >= 2``)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-d array of shape (N, d)")
        if pts.shape[0] < 2:
            raise ValueError("a path needs at least two points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.points, axis=0)

    def __len__(self) -> int:
        return self.points.shape[0] - 1

    @classmethod
    def random(cls, seed: int, n_segments: int = 10, d: int = 3, scale: float = 1.0) -> "PiecewisePath":
        rng = np.random.default_rng(seed)
        steps = rng.normal(scale=scale, size=(n_segments, d))
        return cls(np.vstack([np.zeros((1, d)), np.cumsum(steps, axis=0)]))

    @classmethod
    def from_csv(cls, path: str) -> "PiecewisePath":
        """One point per row; a non-numeric first row is taken as a header."""
        rows = []
        with open(path, newline="") as fh:
            for i, row in enumerate(csv.reader(fh)):
                if not row or all(not x.strip() for x in row):
                    continue
                try:
                    rows.append([float(x) for x in row])
                except ValueError:
                    if i == 0 and not rows:
                        continue
                    raise ValueError(f"non-numeric entry in row {i + 1} of {path}") from None
        if len({len(r) for r in rows}) > 1:
            raise ValueError("inconsistent number of columns")
        return cls(np.array(rows))

    def concat(self, other: "PiecewisePath") -> "PiecewisePath":
        """Follow ``self`` then a translate of ``other`` starting at our end point."""
        if other.d != self.d:
            raise ValueError("dimension mismatch")
        shifted = other.points[1:] - other.points[0] + self.points[-1]
        return PiecewisePath(np.vstack([self.points, shifted]))

    def split_segment(self, i: int, s: float = 0.5) -> "PiecewisePath":
        """Insert a point at fraction ``s`` of segment ``i``; the trace is unchanged."""
        p, q = self.points[i], self.points[i + 1]
        mid = p + s * (q - p)
        return PiecewisePath(np.vstack([self.points[: i + 1], mid, self.points[i + 1 :]]))

    def resample(self, partition: int) -> tuple["PiecewisePath", np.ndarray]:
        """Refine so that ``t_k = k / partition`` are vertices.

        Segment ``j`` is run over ``[j/K, (j+1)/K]`` at constant speed. Returns
        the refined path and the vertex indices of ``t_0, ..., t_partition``.
        """
        K = len(self)
        ts = np.linspace(0.0, 1.0, partition + 1)
        knots = np.arange(K + 1) / K
        all_t = np.unique(np.concatenate([ts, knots]))
        seg = np.minimum((all_t * K).astype(int), K - 1)
        frac = all_t * K - seg
        pts = self.points[seg] + frac[:, None] * (self.points[seg + 1] - self.points[seg])
        idx = np.searchsorted(all_t, ts)
        return PiecewisePath(pts), idx


# -- dense tensors ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NumericTensor:
    """Levels ``0..n``; level ``k`` is an array of shape ``(d,) * k``."""

    d: int
    levels: tuple

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def coeff(self, w: Word) -> float:
        if len(w) > self.n:
            raise ValueError(f"word of length {len(w)} above truncation level {self.n}")
        if not w:
            return float(self.levels[0])
        return float(self.levels[len(w)][tuple(a - 1 for a in w)])

    def __mul__(self, other: "NumericTensor") -> "NumericTensor":
        """Truncated tensor (concatenation) product."""
        n = min(self.n, other.n)
        out = []
        for k in range(n + 1):
            acc = np.zeros((self.d,) * k)
            for i in range(k + 1):
                acc = acc + np.multiply.outer(self.levels[i], other.levels[k - i])
            out.append(acc)
        return NumericTensor(self.d, tuple(out))

    def max_abs_diff(self, other: "NumericTensor") -> float:
        return max(float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) for a, b in zip(self.levels, other.levels))

    def to_json(self) -> dict:
        return {
            "dimension": self.d,
            "level": self.n,
            "coefficients": {
                format_word(tuple(int(i) + 1 for i in idx)) if k else "e": float(self.levels[k][idx] if k else self.levels[0])
                for k in range(self.n + 1)
                for idx in (np.ndindex(*(self.d,) * k) if k else [()])
            },
        }


def tensor_exp(v: np.ndarray, n: int) -> NumericTensor:
    """``exp(v)`` truncated at level ``n``: level ``k`` is ``v^{(x)k} / k!``."""
    v = np.asarray(v, dtype=float)
    levels = [np.array(1.0)]
    for k in range(1, n + 1):
        levels.append(np.multiply.outer(levels[-1], v) / k)
    return NumericTensor(v.shape[0], tuple(levels))


def signature(path: PiecewisePath, n: int) -> NumericTensor:
    """Chen product of the segment exponentials, truncated at level ``n``."""
    if n < 0:
        raise ValueError("level must be non-negative")
    out = tensor_exp(np.zeros(path.d), n)
    for v in path.increments:
        out = out * tensor_exp(v, n)
    return out


def pair_numeric(f: FreeElement, s: NumericTensor) -> float:
    if f.degree > s.n:
        raise ValueError(f"element degree {f.degree} exceeds truncation level {s.n}")
    return math.fsum(float(c) * s.coeff(w) for w, c in f.items())


# -- sparse per-word dynamic program ----------------------------------------------------

def _group_by_length(words: Sequence[Word]) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for i, w in enumerate(words):
        groups.setdefault(len(w), []).append(i)
    return groups


def word_trajectories(path: PiecewisePath, words: Sequence[Word]) -> np.ndarray:
    """``out[k, i]`` is the coefficient of ``words[i]`` in the signature up to vertex ``k``.

    For each word ``w`` of length ``m`` we carry the prefix coefficients
    ``c[j] = <w[:j], S>``; a segment with increment ``x`` maps them to
    ``c'[j] = sum_{i<=j} c[i] x_{w_i} ... x_{w_{j-1}} / (j-i)!``.
    """
    words = [tuple(w) for w in words]
    if any(a < 1 or a > path.d for w in words for a in w):
        raise ValueError("word letter outside the path dimension")
    incs = path.increments
    out = np.empty((len(incs) + 1, len(words)))
    inv_fact = [1.0 / math.factorial(k) for k in range(max((len(w) for w in words), default=0) + 1)]
    for m, idx in _group_by_length(words).items():
        if m == 0:
            out[:, idx] = 1.0
            continue
        W = np.array([words[i] for i in idx]) - 1
        c = np.zeros((len(idx), m + 1))
        c[:, 0] = 1.0
        out[0, idx] = 0.0
        for step, x in enumerate(incs, start=1):
            X = x[W]
            new = c.copy()
            for i in range(m):
                prod = np.ones(len(idx))
                for j in range(i + 1, m + 1):
                    prod = prod * X[:, j - 1]
                    new[:, j] += c[:, i] * prod * inv_fact[j - i]
            c = new
            out[step, idx] = c[:, m]
    return out


def word_coefficients(path: PiecewisePath, words: Sequence[Word]) -> np.ndarray:
    return word_trajectories(path, words)[-1]


def pair_path(f: FreeElement, path: PiecewisePath) -> float:
    """``<f, S(path)>`` through the sparse route; no truncation level needed."""
    items = list(f.items())
    if not items:
        return 0.0
    vals = word_coefficients(path, [w for w, _ in items])
    return math.fsum(float(c) * v for (_, c), v in zip(items, vals))


def pair_trajectory(f: FreeElement, path: PiecewisePath) -> np.ndarray:
    items = list(f.items())
    if not items:
        return np.zeros(len(path) + 1)
    traj = word_trajectories(path, [w for w, _ in items])
    return traj @ np.array([float(c) for _, c in items])


# -- checks ---------------------------------------------------------------------

def check_shuffle_identity(f: FreeElement, g: FreeElement, path: PiecewisePath, n: int) -> float:
    """``|<f sh g, S> - <f, S><g, S>|`` at truncation ``n``."""
    if max(f.degree, 0) + max(g.degree, 0) > n:
        raise ValueError("truncation level too low for the shuffle product")
    s = signature(path, n)
    return abs(pair_numeric(shuffle(f, g), s) - pair_numeric(f, s) * pair_numeric(g, s))


INTEGRATION_CONVENTION = (
    "reversed-word reading (dX = dgamma (x) X): <f < g, X_1> = int_0^1 <g, X_t> d<f, X_t>; "
    "the left slot of < is the integrator and the right slot the integrand"
)


@dataclass
class IntegrationCheck:
    algebraic: float
    riemann_stieltjes: float
    partition: int
    convention: str = INTEGRATION_CONVENTION

    @property
    def error(self) -> float:
        return abs(self.algebraic - self.riemann_stieltjes)

    def to_json(self) -> dict:
        return {
            "algebraic": self.algebraic,
            "riemann_stieltjes": self.riemann_stieltjes,
            "partition": self.partition,
            "error": self.error,
            "convention": self.convention,
        }


def halfshuffle_integration(
    f: FreeElement, g: FreeElement, path: PiecewisePath, n: Optional[int], partition: int
) -> IntegrationCheck:
    """Compare ``<f < g, X>`` with a left-point Riemann-Stieltjes sum.

    ``X`` is the signature with words read backwards, so the first letter is
    the outermost integral. With it ``f < g`` integrates the path functional of
    ``g`` against that of ``f`` over a uniform partition of ``[0, 1]``.
    """
    if partition < 1:
        raise ValueError("partition must be at least 1")
    hs = half_shuffle(f, g)
    if n is not None and max(hs.degree, f.degree, g.degree) > n:
        raise ValueError("truncation level too low for the half shuffle")
    fine, idx = path.resample(partition)
    F = pair_trajectory(reverse_words(f), fine)[idx]
    G = pair_trajectory(reverse_words(g), fine)[idx]
    rs = math.fsum(G[:-1] * np.diff(F))
    return IntegrationCheck(pair_path(reverse_words(hs), path), rs, partition)


def check_halfshuffle_integration(
    f: FreeElement, g: FreeElement, path: PiecewisePath, n: Optional[int], partition: int
) -> float:
    return halfshuffle_integration(f, g, path, n, partition).error


def chen_defect(p1: PiecewisePath, p2: PiecewisePath, n: int) -> float:
    """``max |S(p1 * p2) - S(p1) (x) S(p2)|`` over all coefficients up to level ``n``."""
    return signature(p1.concat(p2), n).max_abs_diff(signature(p1, n) * signature(p2, n))


# -- worked example ---------------------------------------------------------------

@dataclass
class WorkedExample:
    word: Word
    seed: int
    factors: list
    coefficient: Fraction
    n_terms: int
    direct: float
    hall_integrals: list
    product: float
    plain_constant: Optional[Fraction]
    plain_integrals: list
    plain_product: Optional[float]
    tolerance: float = 1e-6
    extras: dict = field(default_factory=dict)

    @property
    def relative_error(self) -> float:
        scale = max(abs(self.direct), abs(self.product))
        if scale == 0:
            return 0.0
        return abs(self.direct - self.product) / scale

    @property
    def passed(self) -> bool:
        return self.relative_error <= self.tolerance

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "seed": self.seed,
            "factorization": [
                {"hall_word": format_word(foliage(t)), "tree": format_tree(t), "power": k}
                for t, k in self.factors
            ],
            "normalizer": fraction_str(self.coefficient),
            "dual_element_terms": self.n_terms,
            "direct_pairing": self.direct,
            "hall_integrals": self.hall_integrals,
            "normalized_product": self.product,
            "relative_error": self.relative_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "plain_iterated_integral_constant": (
                fraction_str(self.plain_constant) if self.plain_constant is not None else None
            ),
            "plain_iterated_integrals": self.plain_integrals,
            "plain_product": self.plain_product,
            "quoted_constant": fraction_str(QUOTED_CONSTANT),
            "quoted_constant_matches": self.plain_constant == QUOTED_CONSTANT,
            **self.extras,
        }


def _single_word_multiple(f: FreeElement, w: Word) -> Optional[Fraction]:
    items = list(f.items())
    if len(items) == 1 and items[0][0] == w:
        return items[0][1]
    return None


def worked_example(
    seed: int = 42,
    path: Optional[PiecewisePath] = None,
    word: Word = WORKED_WORD,
    d: int = 3,
    n_segments: int = 10,
    H: Optional[HallSet] = None,
) -> WorkedExample:
    """Coefficient of the dual basis element ``S_w`` in the signature, two ways.

    Directly: expand ``S_w`` into words and pair with the sparse recursion.
    Factored: ``S_w = c * prod <(h)^{sh k}``, and each Hall integral is paired
    on its own, so the shuffle identity turns the pairing into a product.
    """
    word = tuple(word)
    if path is None:
        path = PiecewisePath.random(seed, n_segments, d)
    if H is None:
        # only the Hall words of the factorisation are needed
        H = generate_hall(d, "lyndon", max(len(u) for u, _ in lyndon_factorize(word)))
    factors = hall_factorize(word, H)
    dual = dual_basis_via_integrals(word, H)
    direct = pair_path(dual.value, path)

    hall_vals, plain_vals = [], []
    product = float(dual.coefficient)
    plain_const: Optional[Fraction] = dual.coefficient
    plain_product = 1.0
    for t, k in factors:
        hi = integral(t)
        v = pair_path(hi, path)
        hall_vals.append({"tree": format_tree(t), "value": v, "power": k})
        product *= v**k
        u = foliage(t)
        pv = float(word_coefficients(path, [u])[0])
        plain_vals.append({"word": format_word(u), "value": pv, "power": k})
        plain_product *= pv**k
        m = _single_word_multiple(hi, u)
        if m is None or plain_const is None:
            plain_const = None
        else:
            plain_const *= m**k
    return WorkedExample(
        word=word,
        seed=seed,
        factors=factors,
        coefficient=dual.coefficient,
        n_terms=len(dual.value),
        direct=direct,
        hall_integrals=hall_vals,
        product=product,
        plain_constant=plain_const,
        plain_integrals=plain_vals,
        plain_product=float(plain_const) * plain_product if plain_const is not None else None,
        extras={"factor_string": factor_string(factors)},
    )


def dense_vs_sparse(path: PiecewisePath, n: int, words: Optional[Iterable[Word]] = None) -> float:
    """Largest disagreement between the dense signature and the per-word recursion."""
    from .words import all_words

    s = signature(path, n)
    ws = list(words) if words is not None else [w for w in all_words(path.d, n) if w]
    sparse = word_coefficients(path, ws)
    dense = np.array([s.coeff(w) for w in ws])
    return float(np.max(np.abs(sparse - dense))) if ws else 0.0
