"""
Half shuffles and areas on words
================================

Words are tuples of letters and elements are sparse rational combinations.
Parse them from text, multiply them, and watch a few identities vanish.
"""

from halfshuffle import area, half_shuffle, parse_element, shuffle
from halfshuffle.identities import verify

f = parse_element("12")
g = parse_element("3")

# the half shuffle keeps the first letter of the left word in front
print("12 < 3   =", half_shuffle(f, g))
print("12 sh 3  =", shuffle(f, g))
print("area     =", area(f, g))

# the shuffle splits into two half shuffles
print("12<3 + 3<12 == 12 sh 3:", half_shuffle(f, g) + half_shuffle(g, f) == shuffle(f, g))

# identities return residuals; zero means they hold
a, b, c = (parse_element(x) for x in "123")
print("area-jacobi residual on letters:", verify("area-jacobi", [a, b, c]))

h = parse_element("2*e + 1/2*31 - 2")
print("chain rule on a mixed element:", verify("chain-rule", [h, f, g]))
