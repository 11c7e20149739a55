"""
Hall sets and decreasing factorisations
=======================================

Two Hall orders ship with the package. Both produce as many trees per degree
as the Witt formula predicts, and every word splits uniquely into a
decreasing product of Hall words.
"""

from halfshuffle import factor_string, generate_hall, hall_factorize, parse_word, witt_dimension
from halfshuffle.magma import foliage, format_tree

for order in ("lyndon", "degree-lex"):
    H = generate_hall(2, order, 5)
    counts = H.counts()
    print(order, {n: (counts[n], witt_dimension(2, n)) for n in counts})

H = generate_hall(2, "lyndon", 4)
for t in H.trees_by_degree[4]:
    print("  ", "".join(map(str, foliage(t))), format_tree(t))

# a longer word over three letters
w = parse_word("233212222111")
H3 = generate_hall(3, "lyndon", 5)
print(factor_string(hall_factorize(w, H3)))
