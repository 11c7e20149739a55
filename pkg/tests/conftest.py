import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from halfshuffle.words import FreeElement, parse_element

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def E(text: str) -> FreeElement:
    return parse_element(text)


def words(d=3, min_len=0, max_len=3):
    return st.lists(st.integers(1, d), min_size=min_len, max_size=max_len).map(tuple)


def elements(d=3, min_len=0, max_len=3, max_terms=3, coeffs=None):
    coeffs = coeffs or st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.dictionaries(words(d, min_len, max_len), coeffs, max_size=max_terms).map(FreeElement)


def positive_elements(**kw):
    return elements(min_len=1, **kw)


# -- brute-force oracles, independent of the products module ------------------------

def interleavings(u, v):
    """Counter of words obtained by choosing the positions of ``u`` in ``u + v``."""
    n = len(u) + len(v)
    out = Counter()
    for pos in itertools.combinations(range(n), len(u)):
        w, iu, iv = [], iter(u), iter(v)
        for i in range(n):
            w.append(next(iu) if i in pos else next(iv))
        out[tuple(w)] += 1
    return out


def brute_shuffle(f: FreeElement, g: FreeElement) -> FreeElement:
    acc = Counter()
    for u, a in f.items():
        for v, b in g.items():
            for w, m in interleavings(u, v).items():
                acc[w] += a * b * m
    return FreeElement(acc)


def brute_half_shuffle(f: FreeElement, g: FreeElement) -> FreeElement:
    """Interleavings whose first letter comes from the left word."""
    acc = Counter()
    for u, a in f.items():
        if not u:
            continue
        for v, b in g.items():
            n = len(u) + len(v)
            for pos in itertools.combinations(range(n), len(u)):
                if 0 not in pos:
                    continue
                w, iu, iv = [], iter(u), iter(v)
                for i in range(n):
                    w.append(next(iu) if i in pos else next(iv))
                acc[tuple(w)] += a * b
    return FreeElement(acc)


@pytest.fixture
def frac():
    return Fraction
