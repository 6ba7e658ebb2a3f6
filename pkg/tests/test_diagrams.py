import random

import pytest
from hypothesis import given, strategies as st

from qtop.acceptance import random_tree
from qtop.diagrams import (
    NotInSpan, W_of_milnor, b_tensor, casimir_sl2, eta_iso, express_in_tree_basis,
    s_map, tree_cable, tree_from_string, tree_TI, varsigma, varsigma_embedded, weight_w,
)
from qtop.links import b_commutator
from qtop.tensor import GradeSelector, embed, project
from qtop.uqsl2 import casimir_c

seeds = st.integers(0, 10**6)


@st.composite
def trees(draw, l=4):
    rng = random.Random(draw(seeds))
    return random_tree(rng, draw(st.integers(1, 4)), l)


@given(trees(), st.integers(0, 10))
def test_antisymmetry(T, k):
    if T.nodes:
        assert weight_w(T.flip(k % len(T.nodes)), 4) == -weight_w(T, 4)


@given(trees(), st.integers(0, 10))
def test_ihx(T, k):
    edges = T.internal_edges()
    if edges:
        a, b, c = T.ihx(edges[k % len(edges)])
        assert (weight_w(a, 4) + weight_w(b, 4) + weight_w(c, 4)).is_zero()


@given(trees())
def test_eta_lands_in_bracket_kernel(T):
    bracket: dict = {}
    for key, v in eta_iso(T).items():
        for kk, s in ((key, 1), (key[1:] + key[:1], -1)):
            bracket[kk] = bracket.get(kk, 0) + s * v
    assert not any(bracket.values())


@given(trees())
def test_tree_basis_reproduces_eta(T):
    comb = express_in_tree_basis(eta_iso(T), 4)
    back = eta_iso(comb)
    target = eta_iso(T)
    assert {k: v for k, v in back.items() if v} == {k: v for k, v in target.items() if v}


def test_not_in_span():
    with pytest.raises(NotInSpan):
        express_in_tree_basis({(1, 2, 3): 1}, 3)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_comb_weight_is_varsigma(m):
    I = tuple(range(1, m + 2))
    assert weight_w(tree_TI(I, m + 1), m + 1) == varsigma_embedded(I, m + 1)


def test_varsigma_recursion():
    assert varsigma(2) == casimir_sl2()
    # vs_3 applies s to the last tensorand of vs_2
    expected: dict = {}
    for w, c in varsigma(2).items():
        for last, k in s_map({w[-1:]: 1}).items():
            expected[w[:-1] + last] = expected.get(w[:-1] + last, 0) + c * k
    assert varsigma(3) == {k: v for k, v in expected.items() if v}
    assert len(varsigma(4)) == 12


def test_b_tensor_is_cyclic():
    b = b_tensor()
    assert all(b.get(k[1:] + k[:1], 0) == v for k, v in b.items())


@pytest.mark.parametrize("i,j", [(1, 2), (2, 1), (1, 1), (2, 3)])
def test_chord_weight_is_casimir(i, j):
    cij = project(embed(casimir_c(1), (i, j), 3), GradeSelector.bigraded(2, 0))
    assert weight_w(tree_TI((i, j), 3), 3) == cij


def _same(a, b, l):
    return weight_w(a, l) == weight_w(b, l)


def test_tree_strings():
    assert _same(tree_from_string("[[1,2],3]"), tree_TI((1, 2, 3), 3), 3)
    assert _same(tree_from_string("[[[1,2],3],4]"), tree_TI((1, 2, 3, 4), 4), 4)
    assert _same(tree_from_string("[[2,1],3]"), tree_TI((2, 1, 3), 3), 3)
    assert _same(tree_from_string("T(2,1,3)"), tree_TI((2, 1, 3), 3), 3)
    assert tree_from_string("[[1,2],[3,4]]").degree == 3
    for bad in ("[1,2", "[1,,2]", "1", "[1,2]]"):
        with pytest.raises(ValueError):
            tree_from_string(bad)


def test_tree_cable_counts():
    T = tree_TI((1, 2, 1), 2)
    assert len(tree_cable(T, 2)) == 8


def test_paths_agree_on_borromean():
    B = b_commutator((1, 2, 3), 3)
    assert W_of_milnor(B, 2) == W_of_milnor(B, 2, path="shortcut")
