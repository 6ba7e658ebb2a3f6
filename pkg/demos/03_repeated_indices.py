"""
Beyond link-homotopy: repeated-index Milnor invariants and cabling
==================================================================

"""

from qtop import a_generator, cable, delta_power, invariant, milnor_numbers
from qtop.verify import check_cabling_diagram, check_sth2, repeated_commutator

# F = [A_12, g A_12 g^-1] kills every Milnor invariant of length <= 3,
# but some repeated-index invariants of length 4 survive
g = a_generator(1, 3, 3)
F = repeated_commutator(1, 2, g, 3)
print("length <= 3 invariants:", milnor_numbers(F, 3))
rep = {I: v for I, v in milnor_numbers(F, 4).items() if len(set(I)) < len(I)}
print("%d repeated length-4 invariants, e.g." % len(rep), sorted(rep.items())[:4])

for m in (2, 3):
    print(check_sth2(F, m))

# cabling: J of the doubled link equals the iterated coproduct of J
A = a_generator(1, 2, 2)
print("J(cable) = Delta^(2) J:", invariant(cable(A, 2), 3) == delta_power(invariant(A, 3), 2))
print(check_cabling_diagram(A, 1, 2))
