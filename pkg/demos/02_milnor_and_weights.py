"""
Milnor invariants and the sl2 weight system
===========================================

"""

from qtop import W_of_milnor, b_commutator, invariant, milnor_numbers, project
from qtop.tensor import GradeSelector
from qtop.verify import check_sth2

# Borromean-type string link B_123 = [A_12, A_23]
B = b_commutator((1, 2, 3), 3)
for I, v in sorted(milnor_numbers(B, 3).items()):
    print("mu_%s = %d" % ("".join(map(str, I)), v))

# W(mu_2(B)) from the Milnor side: Magnus expansion, trees, weight system
W = W_of_milnor(B, 2)
print("W o mu_2:")
print(W.pretty())

# the degree-3 part of J(B) at h^2, computed from R-matrices alone
J = invariant(B, 3)
print("h-part of J at h^2:")
print(project(J, GradeSelector.h_part()).pretty())

# both sides agree; the report carries a witness when they do not
print(check_sth2(B, 2))
