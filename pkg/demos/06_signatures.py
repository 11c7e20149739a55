"""
Signatures of polygonal paths
=============================

Pairing an element with the signature turns algebra into numbers. Shuffles
become products, and the half shuffle becomes a Riemann-Stieltjes integral.
"""

import numpy as np

from halfshuffle import PiecewisePath, pair_path, parse_element, shuffle
from halfshuffle.signature import signature
from halfshuffle.signature import INTEGRATION_CONVENTION, check_halfshuffle_integration

path = PiecewisePath.random(seed=3, n_segments=6, d=2, scale=0.3)
f, g = parse_element("12"), parse_element("2 - 1")

lhs = pair_path(shuffle(f, g), path)
rhs = pair_path(f, path) * pair_path(g, path)
print(f"<f sh g, S> = {lhs:.12f}   <f,S><g,S> = {rhs:.12f}")

S = signature(path, 3)
print("dense and sparse agree:", np.isclose(S.coeff((1, 2, 2)), pair_path(parse_element("122"), path)))

print(INTEGRATION_CONVENTION)
for K in (10, 100, 1000, 10000):
    err = check_halfshuffle_integration(parse_element("1"), parse_element("2"), path, None, K)
    print(f"partition {K:6d}: error {err:.2e}")
