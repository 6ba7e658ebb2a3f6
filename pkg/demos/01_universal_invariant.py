"""
The universal sl2 invariant of a few small string links
=======================================================

"""

from qtop import (
    BraidWord, TangleDiagram, a_generator, coeff_h, evaluate_diagram, invariant, kink,
    linking_matrix,
)
from qtop.verify import linking_formula

# the pure braid A_12 = s1^2: one full twist of two strands
A = a_generator(1, 2, 2)
J = invariant(A, 3)
print("J(A_12) mod h^3:")
print(J.pretty())

# the h-linear part is half the linking matrix contracted with c
print("linking matrix:", linking_matrix(A))
print("coeff_h matches:", coeff_h(J).truncate(1) == linking_formula(linking_matrix(A), 1))

# the same braid drawn as a tangle diagram gives the same element
T = TangleDiagram.from_braid(A)
print("diagram route agrees:", evaluate_diagram(T, 3) == J)

# a single curl on one strand: framing +1, so J = 1 + c_11 h/2 + ...
print("J(kink) mod h^3:")
print(evaluate_diagram(kink(1), 3).pretty())

# a non-pure braid is rejected
try:
    invariant(BraidWord(2, ((1, 1),)), 2)
except ValueError as exc:
    print("s1 alone:", exc)
