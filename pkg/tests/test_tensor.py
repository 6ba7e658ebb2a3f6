import json

import pytest
from hypothesis import given, strategies as st

from qtop.tensor import (
    GradeSelector, StrandMismatch, TensorElement, coeff_h, delta_power, embed, project,
    tensor_mul,
)
from qtop.hpoly import HSeries
from qtop.uqsl2 import AlgebraElement, casimir_c, coproduct, r_matrix

N = 3
monos = st.tuples(*(st.integers(0, 2),) * 3)


@st.composite
def elements(draw, strands=2):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        key = tuple(draw(monos) for _ in range(strands))
        terms[key] = HSeries([draw(st.integers(-3, 3)) for _ in range(N)], N)
    return TensorElement(strands, N, terms)


@given(elements(), elements(), elements())
def test_multiplication_is_associative(x, y, z):
    assert tensor_mul(tensor_mul(x, y), z) == tensor_mul(x, tensor_mul(y, z))


@given(elements())
def test_json_round_trip(x):
    assert TensorElement.from_json(x.to_json()) == x
    assert json.loads(x.to_json()) == x.to_json_obj()


def test_json_is_sorted():
    keys = [t["key"] for t in r_matrix(1, N).to_json_obj()["terms"]]
    assert keys == sorted(keys)


def test_strand_mismatch():
    with pytest.raises(StrandMismatch):
        TensorElement.one(2, N) + TensorElement.one(3, N)


@given(monos)
def test_delta_power_two_is_coproduct(m):
    x = AlgebraElement.monomial(m, N)
    assert delta_power(x.as_tensor(), 2) == coproduct(x)


@given(monos)
def test_delta_power_zero_is_counit(m):
    x = AlgebraElement.monomial(m, N).as_tensor()
    expected = TensorElement.one(0, N) if m == (0, 0, 0) else TensorElement.zero(0, N)
    assert delta_power(x, 0) == expected


def test_delta_power_is_multiplicative():
    R = r_matrix(1, N)
    assert delta_power(tensor_mul(R, R), 3) == tensor_mul(delta_power(R, 3), delta_power(R, 3))


def test_embed_of_casimir():
    c = embed(casimir_c(N), (3, 1), 3)
    assert c.coefficient(((0, 0, 1), (0, 0, 0), (1, 0, 0))) == HSeries.one(N)


def test_coeff_h_of_r_matrix():
    r = coeff_h(r_matrix(1, N))
    assert r.order == N - 1
    assert r.truncate(1) + r.flip().truncate(1) == casimir_c(1)


def test_projections_partition_grades():
    R = tensor_mul(r_matrix(1, 4), r_matrix(1, 4))
    parts = [project(R, GradeSelector.bigraded(i, j)) for j in range(4) for i in range(9)]
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    assert total == R
