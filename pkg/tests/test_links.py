import random

import pytest
from hypothesis import given, strategies as st

from qtop.acceptance import random_pure_braid
from qtop.links import (
    BraidWord, MalformedDiagram, NotPure, ParseError, TangleDiagram, a_generator,
    b_commutator, cable, evaluate_diagram, invariant, kink, linking_matrix, parse_word,
)
from qtop.tensor import GradeSelector, TensorElement, coeff_h, degree, delta_power, project
from qtop.uqsl2 import casimir_c
from qtop.verify import linking_formula

seeds = st.integers(0, 10**6)


def test_trivial_and_a_generator():
    assert invariant(BraidWord(2), 3) == TensorElement.one(2, 3)
    J = invariant(a_generator(1, 2, 2), 2)
    assert J == TensorElement.one(2, 2) + casimir_c(2).hbar_shift(1)


@given(seeds)
def test_linking_formula_on_random_braids(seed):
    rng = random.Random(seed)
    L = random_pure_braid(rng, rng.randint(2, 4), 12)
    assert coeff_h(invariant(L, 2)) == linking_formula(linking_matrix(L), 1)


@given(seeds)
def test_degree_bound(seed):
    rng = random.Random(seed)
    L = random_pure_braid(rng, 3, 10)
    J = invariant(L, 4)
    for key, v in J.terms.items():
        for j in range(4):
            if v[j]:
                assert degree(key) <= 2 * j


@given(seeds)
def test_word_path_matches_algebraic_path(seed):
    rng = random.Random(seed)
    x, y = (random_pure_braid(rng, 3, 6) for _ in range(2))
    e = parse_word(f"[{x},{y}]^2 {x}", 3) if len(x) else parse_word(str(y), 3)
    assert invariant(e, 3) == invariant(e, 3, path="word")


def test_braid_relation():
    w1 = BraidWord(3, ((1, 1), (2, 1), (1, 1)))
    w2 = BraidWord(3, ((2, 1), (1, 1), (2, 1)))
    J = evaluate_diagram(TangleDiagram.from_braid(w2 * w1.inverse()), 3)
    assert J == TensorElement.one(3, 3)


def test_diagram_matches_braid():
    w = a_generator(1, 3, 3) * a_generator(2, 3, 3).inverse()
    assert evaluate_diagram(TangleDiagram.from_braid(w), 3) == invariant(w, 3)


@pytest.mark.parametrize("framing", [1, -1, 2, -2])
def test_kinks(framing):
    left = evaluate_diagram(kink(framing, "left"), 3)
    right = evaluate_diagram(kink(framing, "right"), 3)
    assert left == right
    assert coeff_h(right) == linking_formula([[framing]], 1)


def test_opposite_kinks_cancel():
    T = TangleDiagram(1, kink(1).slices + kink(-1, "left").slices)
    assert evaluate_diagram(T, 4) == TensorElement.one(1, 4)


def test_cabling_intertwines_coproduct():
    L = a_generator(1, 2, 2)
    for p in (2, 3):
        assert invariant(cable(L, p), 3) == delta_power(invariant(L, 3), p)


def test_b_commutator_leading_term():
    J = invariant(b_commutator((1, 2, 3), 3), 3)
    assert project(J, GradeSelector.bigraded(2, 1)).is_zero()
    assert not project(J, GradeSelector.bigraded(3, 2)).is_zero()


def test_parser():
    e = parse_word("A(1,2)^-1 [B[1,2,3], s2^2] (s1 s1)^3", 3)
    assert e.to_word().is_pure()
    assert str(parse_word("s1^2", 2).to_word()) == "s1 s1"


@pytest.mark.parametrize("text", ["s1 ]", "A(1,2", "x"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as exc:
        parse_word(text, 2)
    assert exc.value.position is not None


def test_not_pure():
    with pytest.raises(NotPure):
        invariant(BraidWord(2, ((1, 1),)), 2)


def test_malformed_diagram():
    with pytest.raises(MalformedDiagram):
        TangleDiagram(1, (("cap", 1),))


def test_diagram_json_round_trip():
    T = kink(2, "left")
    assert TangleDiagram.from_json(T.to_json()) == T
