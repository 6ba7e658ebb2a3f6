from hypothesis import given, strategies as st

from qtop.pbw import mono_mul
from qtop.tensor import TensorElement, embed, tensor_mul
from qtop.uqsl2 import (
    AlgebraElement, alg_mul, antipode, casimir_c, coproduct, coproduct_closed_form,
    counit, normal_order, r_matrix,
)

N = 4
monos = st.tuples(*(st.integers(0, 2),) * 3)
words = st.lists(st.sampled_from("EFH"), min_size=0, max_size=5).map("".join)


def _mono(m):
    return AlgebraElement.monomial(m, N)


@given(words, words)
def test_normal_order_is_multiplicative(u, v):
    assert alg_mul(normal_order(u, N), normal_order(v, N)) == normal_order(u + v, N)


@given(monos, monos)
def test_literal_rewriting_matches_closed_form(m1, m2):
    word = [("F", m1[0]), ("H", m1[1]), ("E", m1[2]), ("F", m2[0]), ("H", m2[1]), ("E", m2[2])]
    direct = AlgebraElement(N, dict(mono_mul(m1, m2, N)))
    assert normal_order(word, N) == direct


@given(monos)
def test_coproduct_matches_closed_form(m):
    assert coproduct(_mono(m)) == coproduct_closed_form(m, N)


@given(monos, monos)
def test_coproduct_is_multiplicative(m1, m2):
    lhs = coproduct(alg_mul(_mono(m1), _mono(m2)))
    assert lhs == tensor_mul(coproduct(_mono(m1)), coproduct(_mono(m2)))


@given(monos)
def test_counit(m):
    x = _mono(m)
    assert counit(x)[0] == (1 if m == (0, 0, 0) else 0)


@given(monos, monos)
def test_antipode_is_antimultiplicative(m1, m2):
    x, y = _mono(m1), _mono(m2)
    assert antipode(alg_mul(x, y)) == alg_mul(antipode(y), antipode(x))


def test_r_matrix_inverse():
    assert tensor_mul(r_matrix(1, N), r_matrix(-1, N)) == TensorElement.one(2, N)


def test_yang_baxter():
    R = r_matrix(1, N)
    r12, r13, r23 = (embed(R, p, 3) for p in ((1, 2), (1, 3), (2, 3)))
    assert tensor_mul(tensor_mul(r12, r13), r23) == tensor_mul(tensor_mul(r23, r13), r12)


def test_r_matrix_intertwines_coproduct():
    R, Rinv = r_matrix(1, N), r_matrix(-1, N)
    for g in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        d = coproduct(_mono(g))
        assert tensor_mul(tensor_mul(R, d), Rinv) == d.flip()


def test_symmetrised_first_order_is_casimir():
    one = TensorElement.one(2, 2)
    r = r_matrix(1, 2) - one
    assert r + r.flip() == casimir_c(2).hbar_shift(1)
