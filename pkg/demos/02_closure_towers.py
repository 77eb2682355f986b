# coding: utf-8

# # Invisible subgroups and closure towers
#
# A normal subgroup N of G is R-invisible when N/[G,N] vanishes after
# tensoring with R.  The certificate lists, for each normal generator a_i,
# a word w_i in indeterminates with w_i(1,...,1) = 1 and w_i(a) = a_i^e.

# In[1]:

from pathlib import Path

from grouploc import (
    TowerBudget,
    ZZ,
    build_tower,
    check_h1_iso,
    divisibility_exponent,
    find_invisible_certificates,
    load_document,
    make_ring,
    parse_presentation,
    product_certificate,
    quotient_by_invisible,
    verify_invisibility_certificate,
)

doc = load_document(Path(__file__).parent / "data" / "bs12.gp")
bs = doc.presentation("BS")
cert = doc.certificates[0]
print(cert, "->", verify_invisibility_certificate(cert, ZZ))

# In[2]:

quotient, hom, omega = quotient_by_invisible(bs, cert, ZZ)
print(quotient, check_h1_iso(hom, ZZ), omega.h2_status)

# In[3]:

# the same check in the free cyclic group fails for every candidate witness
from grouploc import InvisibilityCertificate, parse_word

a = parse_presentation("A = < a >")
print(verify_invisibility_certificate(InvisibilityCertificate(a, (parse_word("a"),), 1, (parse_word("[a,$1]"),)), make_ring([2])))

# In[4]:

# certificates found by the template search, and their product
g = parse_presentation("G = < a, b, t | t*a*t^-1*a^-2, t*b*t^-1*b^-3 >")
found = find_invisible_certificates(g, make_ring([2]))
for c in found:
    print(c)
prod = product_certificate(*found)
print(prod, "->", verify_invisibility_certificate(prod, make_ring([2])))

# # Towers
#
# Each level adjoins square roots of a basis of H_1.  Over Z[1/2] the image
# of the seed generator becomes divisible by exactly 2^d in integral H_1.

# In[5]:

seed = parse_presentation("Z = < x >")
ring = make_ring([2])
for d in (1, 2, 3):
    t = build_tower(seed, ring, TowerBudget(d, auto_sqrt=True))
    print(d, t.levels[-1], divisibility_exponent(t.levels[-1], t.seed_images[-1][0], 2))

# In[6]:

t = build_tower(bs, ring, TowerBudget(2, auto_sqrt=True, kill_invisible=True))
print(t.to_json()[:600])
