"""Arithmetic on b + c*I values and the threshold rule.

    python demos/02_neutrosophic_algebra.py
"""

from ncm import INDET, NeutroValue, TriState, embed, threshold

w = NeutroValue(0.8)
print("I * 0.8     =", INDET * w)
print("I * I       =", INDET * INDET)
print("(0.1 + 0.8I) + (0.2 - 0.3I) =", NeutroValue(0.1, 0.8) + NeutroValue(0.2, -0.3))
print("(1 + I)(1 + I) =", NeutroValue(1, 1) * NeutroValue(1, 1))  # 1 + 3I

# Thresholding at k = 0.5
for v in [NeutroValue(0.8), NeutroValue(0.5), NeutroValue(0, 0.3), NeutroValue(0.1, 0.8), NeutroValue(0.9, -2)]:
    print(f"f({v}) = {threshold(v, 0.5)}")

# States embed as values and threshold back to themselves.
assert all(threshold(embed(s)) is s for s in TriState)
