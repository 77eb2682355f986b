# coding: utf-8

# # First homology with coefficients in a subring of Q
#
# A coefficient ring R is a subring of Q, determined by the primes it
# inverts.  H_1(G; R) is computed from the relator exponent matrix by Smith
# normal form; torsion whose order is a unit in R disappears.

# In[1]:

from grouploc import (
    NullhomologousSystem,
    QQ,
    ZZ,
    adjoin_solutions,
    h1_with_R,
    make_ring,
    parse_presentation,
    parse_ring,
    parse_word,
    smith_normal_form,
)

# In[2]:

# Smith form of a small integer matrix: U * M * V = D
snf = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
print("diagonal:", snf.diag)

# In[3]:

# Z/6 x Z over four rings: 2 and 3 are inverted one at a time
g = parse_presentation("G = < a, b | a^6 >")
for ring in (ZZ, make_ring([2]), parse_ring("Z[1/2,1/3]"), QQ):
    print(f"H_1(G; {ring.name}) =", h1_with_R(g, ring).as_dict())

# # Adjoining roots
#
# An R-nullhomologous system asks for elements $i with $i^e = w_i, where e
# is a unit in R and each w_i has exponent sum zero in every $j.  Adjoining a
# solution gives a new presentation and a map that is an isomorphism on
# H_1(-; R); the H_2 half of the certificate comes from the construction.

# In[4]:

s = NullhomologousSystem(g, 2, (parse_word("b*$1*b^-1*$1^-1*b^2"),))
print(s)
target, hom, cert = adjoin_solutions(g, s, make_ring([2]), name="G2")
print(target)
print(cert.as_dict())

# In[5]:

# over Z the exponent 2 is not allowed
from grouploc import InvalidSystem

try:
    adjoin_solutions(g, s, ZZ)
except InvalidSystem as exc:
    print("rejected:", exc)
