import json

import pytest

from qtop.links import BraidWord, StringLinkExpr, a_generator, b_commutator
from qtop.verify import (
    HypothesisNotVerified, VerificationReport, b_product, check_cabling_diagram,
    check_containments, check_prop_sc, check_sth1, check_sth2, check_sth2h,
    repeated_commutator,
)

A12, A13, A23 = (a_generator(i, j, 3) for i, j in ((1, 2), (1, 3), (2, 3)))
C = StringLinkExpr.comm(A12, A23)


def _flip(L, i):
    w = L.to_word()
    letters = list(w.letters)
    p, e = letters[i]
    letters[i] = (p, -e)
    return BraidWord(w.strands, tuple(letters))


def test_report_needs_witness_on_failure():
    with pytest.raises(ValueError):
        VerificationReport("sth2", "x", 3, 2, 3, "fail")
    with pytest.raises(ValueError):
        VerificationReport("sth2", "x", 3, 2, 3, "maybe")


def test_report_json():
    rep = check_sth2(C, 2)
    obj = json.loads(rep.to_json())
    assert obj["status"] == "pass" and obj["m"] == 2 and obj["order"] == 3


def test_prop_sc():
    assert check_prop_sc(A12 * A13).ok
    bad = check_prop_sc(A12, linking=[[0, 0, 0], [0, 0, 0], [0, 0, 0]])
    # the witness sits at h^0 of coeff_h(J)
    assert not bad.ok and bad.witness["power"] == 0


def test_sth1_on_b_products():
    assert check_sth1(b_product({(1, 2, 3): 2, (1, 3, 2): -1}, 3), 2).ok
    assert check_sth1(b_product({(1, 2, 3): 1}, 3, extra=[repeated_commutator(1, 2, A13, 3)]), 2).ok


def test_sth2_and_sth2h():
    assert check_sth2(C, 2).ok
    assert check_sth2h(C, 2).ok


def test_sth2_beyond_link_homotopy():
    for g in (A13, A23):
        assert check_sth2(repeated_commutator(1, 2, g, 3), 2).ok


def test_hypothesis_failure_has_witness():
    with pytest.raises(HypothesisNotVerified) as exc:
        check_sth2(A12, 2)
    assert exc.value.witness["index"] == [1, 2]


def test_mutant_fails_with_witness():
    rep = check_sth2(_flip(C, 0), 2, verify_hypothesis=False)
    assert not rep.ok
    assert {"key", "power", "lhs", "rhs"} <= set(rep.witness)


@pytest.mark.parametrize("kind", ["eqJT", "eqJT2", "lemma-sl4"])
def test_containments_on_borromean(kind):
    assert check_containments(b_commutator((1, 2, 3), 3), kind, m=2).ok


def test_cor_final2():
    assert check_containments(repeated_commutator(1, 2, A13, 3), "corFinal2").ok
    with pytest.raises(HypothesisNotVerified):
        check_containments(C, "corFinal2")


def test_containment_mutant():
    rep = check_containments(_flip(C, 0), "eqJT", m=2, verify_hypothesis=False)
    assert not rep.ok and rep.witness


def test_unknown_containment():
    with pytest.raises(ValueError):
        check_containments(C, "nope", m=2)


def test_cabling():
    assert check_cabling_diagram(a_generator(1, 2, 2), 1, 2).ok
