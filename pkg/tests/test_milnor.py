import random
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from qtop.acceptance import random_pure_braid
from qtop.hpoly import DomainError
from qtop.links import BraidWord, a_generator, b_commutator, linking_matrix
from qtop.milnor import (
    FreeWord, NotInFiltration, artin_of_braid, in_sl, index_set, index_set_size, lh_representative,
    magnus, milnor_map, milnor_number, milnor_numbers, parse_index,
)

seeds = st.integers(0, 10**6)
free_words = st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=8).map(FreeWord)


@given(free_words, free_words)
def test_magnus_is_multiplicative(u, v):
    assert magnus(u * v, 4) == magnus(u, 4) * magnus(v, 4)


@given(free_words)
def test_magnus_inverse(u):
    assert magnus(u.inverse(), 4) == magnus(u, 4).inverse()


@given(seeds)
def test_artin_fixes_boundary_word(seed):
    rng = random.Random(seed)
    assert artin_of_braid(random_pure_braid(rng, 4, 12)).preserves_product()


@given(seeds)
def test_length_two_is_linking_number(seed):
    rng = random.Random(seed)
    L = random_pure_braid(rng, 3, 12)
    lk = linking_matrix(L)
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                assert milnor_number(L, (i, j)) == lk[i - 1][j - 1]


@given(seeds)
def test_two_routes_agree(seed):
    rng = random.Random(seed)
    L = random_pure_braid(rng, 3, 10)
    for I in ((1, 2, 3), (2, 3, 1), (1, 1, 2), (3, 1, 2, 3)):
        assert milnor_number(L, I) == milnor_number(L, I, method="free")


@pytest.mark.parametrize("m,l", [(2, 3), (3, 3), (3, 4), (4, 4)])
def test_delta_table(m, l):
    J_all = index_set(m, l)
    for J in J_all:
        B = b_commutator(J, l)
        for K in J_all:
            assert milnor_number(B, K) == (1 if J == K else 0)


@pytest.mark.parametrize("m,l", [(2, 3), (3, 3), (2, 4), (3, 4), (4, 4), (4, 5)])
def test_index_set_sizes(m, l):
    # choose the m labels, the smallest goes first, the largest last
    assert len(index_set(m, l)) == index_set_size(m, l) == comb(l, m) * factorial(m - 2)


def test_borromean_values():
    B = b_commutator((1, 2, 3), 3)
    assert milnor_number(B, "123") == 1
    assert milnor_number(B, "213") == -1


def test_first_nonvanishing_is_additive():
    x, y = b_commutator((1, 2, 3), 3), b_commutator((1, 3, 2), 3)
    mx, my, mxy = (milnor_numbers(w, 3) for w in (x, y, x * y))
    for I in set(mx) | set(my):
        assert mxy.get(I, 0) == mx.get(I, 0) + my.get(I, 0)


@given(seeds)
def test_lh_representative(seed):
    rng = random.Random(seed)
    L = random_pure_braid(rng, 3, 12)
    rep = lh_representative(L)
    mine, theirs = milnor_numbers(L, 3), milnor_numbers(rep, 3)
    for I in set(mine) | set(theirs):
        if len(set(I)) == len(I):
            assert mine.get(I, 0) == theirs.get(I, 0)


def test_milnor_map_requires_filtration():
    with pytest.raises(NotInFiltration):
        milnor_map(a_generator(1, 2, 3), 2)
    assert in_sl(b_commutator((1, 2, 3), 3), 2)


def test_milnor_map_of_a_generator():
    mm = milnor_map(a_generator(1, 2, 2), 1)
    assert mm
    assert all(len(k) == 2 for k in mm)


def test_parse_index_and_errors():
    assert parse_index("123") == parse_index("(1,2,3)") == (1, 2, 3)
    with pytest.raises(DomainError):
        milnor_number(BraidWord(2), "1")
    with pytest.raises(DomainError):
        milnor_number(BraidWord(2), "13")
