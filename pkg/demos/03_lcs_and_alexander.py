# coding: utf-8

# # Lower central series and the Alexander module
#
# The Magnus expansion x -> 1 + X embeds a free group in truncated
# noncommutative power series.  The lowest nonvanishing degree of w - 1 is
# the lower central depth of w.

# In[1]:

from grouploc import (
    GroupHom,
    alexander_polynomial,
    divisibility_test,
    free_group,
    kh1_rank,
    lcs_degree,
    magnus_expand,
    parse_presentation,
    parse_word,
    rational_lcs_quotient,
    stallings_injectivity_check,
)

print(magnus_expand(parse_word("[x,y]"), 3))
print(lcs_degree(parse_word("[x,y]")), lcs_degree(parse_word("[[x,y],y]")))

# In[2]:

# graded rational LCS dimensions: Witt numbers for free groups
print(rational_lcs_quotient(free_group(2), 5).dimensions)
print(rational_lcs_quotient(parse_presentation("< a, b | [a,b] >"), 4).dimensions)

# In[3]:

# a map that collapses both generators is not injective on the graded pieces
collapse = GroupHom(free_group(2), free_group(1), (parse_word("x1"), parse_word("x1")))
print(stallings_injectivity_check(collapse, 2))

# # Fox calculus
#
# Abelianized Fox derivatives of the relators present the Alexander module.
# For a knot group the gcd of the maximal minors is the Alexander polynomial.

# In[4]:

trefoil = parse_presentation("< a, b | a*b*a*b^-1*a^-1*b^-1 >")
print(alexander_polynomial(trefoil))
print([kh1_rank(free_group(mu)) for mu in (1, 2, 3)])

# In[5]:

# [x,y] is not divisible by x - 1 in the Alexander module of F_2, but is by x
f2 = parse_presentation("< x, y >")
for s in ("x - 1", "x", "y^2 - 2*y + 1"):
    print(s, divisibility_test(f2, parse_word("[x,y]"), s).verdict)
