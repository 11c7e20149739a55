"""
PBW basis and its dual
======================

P_w brackets the Hall factors of w. The dual element S_w is a shuffle
polynomial in Hall integrals, and pairing the two families gives the
identity matrix.
"""

import numpy as np

from halfshuffle import dual_basis_element, expand_in_dual_basis, generate_hall, pairing, pbw_element
from halfshuffle.pbw import STRATEGIES, dual_of_hall_word
from halfshuffle.words import all_words, parse_element

H = generate_hall(2, "lyndon", 4)
words = all_words(2, 3)

gram = np.array(
    [[float(pairing(dual_basis_element(u, H), pbw_element(v, H))) for v in words] for u in words]
)
print("words:", len(words), " identity:", np.array_equal(gram, np.eye(len(words))))

# three routes to the dual of a Hall word give one answer
t = H.word_index[(1, 1, 2)]
print({s: str(dual_of_hall_word(t, H, s)) for s in STRATEGIES})

# any element is a polynomial in Hall integrals
f = parse_element("121 - 2*211 + 1/3*e")
p = expand_in_dual_basis(f, H)
print(p)
print("evaluates back:", p.evaluate() == f)
