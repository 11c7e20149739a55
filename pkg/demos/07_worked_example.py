"""
One dual basis coefficient, two ways
====================================

The coefficient of S_w in the signature of a random path, for
w = 233212222111. Directly it is a pairing with a level-12 element; through
the structure theorem it is a product of four Hall integrals.
"""

from halfshuffle import worked_example

r = worked_example(seed=42)
j = r.to_json()
print("factors:", j["factor_string"])
print("normalizer on the Hall integrals:", j["normalizer"])
for h in r.hall_integrals:
    print(f"  <{h['tree']}>^{h['power']} = {h['value']:.6f}")
print(f"direct  {r.direct:.12e}")
print(f"product {r.product:.12e}")
print(f"relative error {r.relative_error:.1e}")
print("constant in plain iterated integrals:", j["plain_iterated_integral_constant"],
      "| quoted:", j["quoted_constant"])
