"""
Eliminating the greatest letter
===============================

Words that do not start with c form a subalgebra Z, and any element is a
shuffle polynomial in c with coefficients in Z. Pure powers of c are kept
as scalars.
"""

from halfshuffle import decompose_series, parse_element
from halfshuffle.elimination import XLetter, closed_forms, j_c

f = parse_element("21 + 3*221 - 22")
s = decompose_series(f, 2)
for k, (z, scalar) in enumerate(zip(s.coefficients, s.scalar_slots)):
    print(f"c^{k}:  {z}   scalar {scalar}")
print("rebuilds f:", s.reconstruct() == f)

# Lie bracket, Hall integral and area of the comb (1 c^3), with c = 2
for name, x in zip(("lie", "integral", "area"), closed_forms(1, 3, 2)):
    print(f"{name:9s}", x)

# the X-word (1c)(2) with c = 3
print("J_c =", j_c([XLetter(1, 1), XLetter(2, 0)], 3))
