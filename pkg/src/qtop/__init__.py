"""Exact computations with the universal sl2 invariant of string links,
Milnor invariants and the sl2 weight system on tree Jacobi diagrams."""

from .hpoly import HSeries, qint, qpow
from .links import (
    BraidWord, StringLinkExpr, TangleDiagram, a_generator, b_commutator, cable,
    evaluate_diagram, invariant, kink, linking_matrix, parse_word,
)
from .milnor import (
    index_set, lh_representative, milnor_map, milnor_number, milnor_numbers,
)
from .diagrams import TreeDiagram, W_of_milnor, tree_TI, varsigma, weight_W, weight_w
from .tensor import GradeSelector, TensorElement, coeff_h, delta_power, project
from .uqsl2 import AlgebraElement, coproduct, r_matrix
from .verify import (
    VerificationReport, check_cabling_diagram, check_containments, check_prop_sc,
    check_sth1, check_sth2, check_sth2h,
)

__all__ = [
    "HSeries", "qint", "qpow", "BraidWord", "StringLinkExpr", "TangleDiagram",
    "a_generator", "b_commutator", "cable", "evaluate_diagram", "invariant", "kink",
    "linking_matrix", "parse_word", "index_set", "lh_representative", "milnor_map",
    "milnor_number", "milnor_numbers", "TreeDiagram", "W_of_milnor", "tree_TI",
    "varsigma", "weight_W", "weight_w", "GradeSelector", "TensorElement", "coeff_h",
    "delta_power", "project", "AlgebraElement", "coproduct", "r_matrix",
    "VerificationReport", "check_cabling_diagram", "check_containments",
    "check_prop_sc", "check_sth1", "check_sth2", "check_sth2h",
]
