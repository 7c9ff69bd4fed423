"""
Hodge-number relations for Calabi-Yau fourfolds
================================================

Over a threefold base with c1*c2 = 24 the stringy chi_y genus is a degree-4
polynomial in y whose coefficients constrain the stringy Hodge numbers.
"""

from stringy_chi import get_model, hodge_relations

for label in ("SU2", "SO6", "E8"):
    rep = hodge_relations(get_model(label), 3, h11_base=1)
    print(f"== {label} ({rep.n_blowups} blowups)")
    for line in rep.lines():
        print("  " + line)
    print()

# with h11(B) = 1 and a chosen h12 the remaining numbers follow
rep = hodge_relations(get_model("SU2"), 3, h11_base=1, h12=0)
print("SU2, h11(B) = 1, h12 = 0:")
print("  h13 =", rep.h13)
print("  h22 =", rep.h22)
