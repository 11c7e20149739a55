"""
Words as shuffle polynomials in iterated areas
==============================================

Every word can be rebuilt from areas alone. The rewriter works on formal
polynomials and only the final check expands them into words.
"""

from fractions import Fraction

from halfshuffle import beta, eval_area_poly, rewrite_area_of_monomial, word_to_area_poly
from halfshuffle.magma import leaf

p = word_to_area_poly((1, 2, 1))
print(p)
print("shuffle degree", p.shuffle_degree, "evaluates to", eval_area_poly(p))

# the leading coefficient of area(A, A1 sh ... sh An)
print([str(beta(k)) for k in range(1, 7)])

r = rewrite_area_of_monomial(leaf(3), [leaf(1), leaf(2)])
print("leading", r.leading, "(expected", Fraction(-1, 3), ")")
print("remainder", r.remainder)
