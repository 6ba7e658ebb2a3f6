"""Drivers that compare the R-matrix evaluation of ``J`` with the
Milnor-invariant / weight-system side, and membership predicates for the
graded containments of ``J``.

Every ``check_*`` returns a :class:`VerificationReport`.  A failing report
always carries a witness: the first monomial (in canonical key order) and
power of ``h`` where the two sides differ, or where a term sits outside the
allowed set.  Filtration hypotheses are decided by the Milnor oracle, not
trusted from the caller; an unmet hypothesis raises
:class:`HypothesisNotVerified` unless ``verify_hypothesis=False``, in which
case the comparison simply runs (this is how mutated inputs are tested).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .diagrams import (
    NotInSpan, TreeCombination, W_of_milnor, express_in_tree_basis, tree_cable,
    varsigma_embedded, weight_W,
)
from .links import (
    BraidWord, StringLinkExpr, TangleDiagram, a_generator, b_commutator, cable,
    invariant, linking_matrix,
)
from .milnor import NotInFiltration, index_set, milnor_map, milnor_numbers
from .pbw import ONE_MONO
from .tensor import (
    GradeSelector, TensorElement, coeff_h, degree, delta_power, embed, project, supp,
)
from .uqsl2 import casimir_c

__all__ = [
    "VerificationReport", "HypothesisNotVerified", "check_prop_sc", "check_sth1",
    "check_sth2", "check_sth2h", "check_containments", "check_cabling_diagram", "CONTAINMENT_KINDS",
    "repeated_commutator", "b_product", "linking_formula",
]

CONTAINMENT_KINDS = ("eqJT", "eqJT2", "corFinal", "corFinal2", "lemma-sl4")


class HypothesisNotVerified(NotInFiltration):
    """The input is not in the required filtration; ``witness`` names the
    first nonzero Milnor invariant that rules it out."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass
class VerificationReport:
    theorem: str
    input: str
    strands: int
    m: int | None
    order: int
    status: str
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json_obj(self) -> dict:
        obj = {
            "theorem": self.theorem, "input": self.input, "strands": self.strands,
            "m": self.m, "order": self.order, "status": self.status,
        }
        if self.witness is not None:
            obj["witness"] = self.witness
        if self.detail:
            obj["detail"] = self.detail
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    def __str__(self):
        head = f"{self.theorem} [{self.input}] l={self.strands} m={self.m} N={self.order}: {self.status}"
        if self.witness:
            w = self.witness
            head += f"\n  witness: key={w['key']} h^{w['power']} lhs={w['lhs']} rhs={w['rhs']}"
            if "reason" in w:
                head += f" ({w['reason']})"
        return head


def _describe(L) -> str:
    if isinstance(L, TangleDiagram):
        return L.to_json()
    return str(L)


def _strands(L) -> int:
    return L.strands


def _word(L) -> BraidWord:
    return L if isinstance(L, BraidWord) else L.to_word()


def _witness(key, power, lhs, rhs, reason=None) -> dict:
    w = {"key": [list(m) for m in key], "power": power, "lhs": str(lhs), "rhs": str(rhs)}
    if reason:
        w["reason"] = reason
    return w


def _compare(theorem, L, m, order, lhs: TensorElement, rhs: TensorElement, detail=None):
    diff = lhs.first_difference(rhs)
    status, witness = "pass", None
    if diff is not None:
        status = "fail"
        witness = _witness(*diff)
    return VerificationReport(theorem, _describe(L), _strands(L), m, order, status,
                              witness, detail or {})


# -- test inputs -------------------------------------------------------------

def repeated_commutator(i: int, j: int, g, l: int) -> StringLinkExpr:
    """``[A_ij, g A_ij g^-1]``: all non-repeating Milnor invariants vanish."""
    a = StringLinkExpr.leaf(a_generator(i, j, l))
    g = g if isinstance(g, StringLinkExpr) else StringLinkExpr.leaf(g)
    return StringLinkExpr.comm(a, StringLinkExpr.stack(g, a, g.inverse()))


def b_product(exponents: dict, l: int, extra=()) -> StringLinkExpr:
    """``prod_I B_I^(k_I)`` in sorted index order, followed by the ``extra`` factors."""
    parts = [b_commutator(I, l) if k == 1 else StringLinkExpr.power(b_commutator(I, l), k)
             for I, k in sorted(exponents.items()) if k]
    parts += [x if isinstance(x, StringLinkExpr) else StringLinkExpr.leaf(x) for x in extra]
    if not parts:
        return StringLinkExpr.leaf(BraidWord(l))
    return parts[0] if len(parts) == 1 else StringLinkExpr.stack(*parts)


# -- the linking-matrix formula ---------------------------------------------

def linking_formula(lk, order: int = 1) -> TensorElement:
    """``1/2 sum_{i,j} lk_ij c_ij`` where ``c_ij`` is ``c`` placed on strands ``i, j``."""
    l = len(lk)
    c = casimir_c(order)
    total = TensorElement.zero(l, order)
    for i in range(l):
        for j in range(l):
            if lk[i][j]:
                total = total + embed(c, (i + 1, j + 1), l).scale(Fraction(lk[i][j], 2))
    return total


def check_prop_sc(L, N: int = 2, linking=None) -> VerificationReport:
    """``coeff_h(J(L))`` against the linking-matrix formula, compared mod ``h``.

    ``linking`` overrides the matrix read off the diagram (used to pair a
    mutated diagram with the original's linking numbers).
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    lhs = coeff_h(invariant(L, N)).truncate(1)
    lk = linking_matrix(L) if linking is None else [list(r) for r in linking]
    rhs = linking_formula(lk, 1)
    return _compare("prop-sc", L, 1, N, lhs, rhs, {"linking_matrix": lk})


# -- link-homotopy and concordance cases -------------------------------------

def _require_filtration(L, m: int, repeating: bool, verify: bool) -> None:
    """Raise unless every (non-repeating, if ``repeating`` is false) Milnor
    invariant of length ``<= m`` vanishes."""
    if not verify or m < 2:
        return
    word = _word(L)
    mus = milnor_numbers(word, m)
    bad = sorted(I for I in mus if repeating or len(set(I)) == len(I))
    if bad:
        I = bad[0]
        name = "SL" if repeating else "SL^h"
        raise HypothesisNotVerified(
            f"input is not in {name}_{m}({word.strands}): mu_{''.join(map(str, I))} = {mus[I]}",
            {"index": list(I), "mu": mus[I]})


def check_sth1(L, m: int, N: int | None = None, verify_hypothesis: bool = True) -> VerificationReport:
    """``project(J(L), h-part)`` mod ``h^(m+1)`` against ``sum_I mu_I(L) vs_I h^m``."""
    N = m + 1 if N is None else N
    _require_filtration(L, m, False, verify_hypothesis)
    J = invariant(L, N).truncate(m + 1)
    lhs = project(J, GradeSelector.h_part())
    if verify_hypothesis:
        rhs = W_of_milnor(L, m, m + 1, path="shortcut")
    else:
        rhs = _shortcut_unchecked(L, m)
    return _compare("sth1", L, m, N, lhs, rhs)


def check_sth2h(L, m: int, N: int | None = None) -> VerificationReport:
    """``project(J(L), h-part)`` against ``W(mu^h_m(L))`` through the tree basis,
    and that against the comb-tensor sum; ``L`` must be in ``SL^h_m``."""
    N = m + 1 if N is None else N
    _require_filtration(L, m, False, True)
    lhs = project(invariant(L, N).truncate(m + 1), GradeSelector.h_part())
    general = W_of_milnor(L, m, m + 1, path="general", homotopy=True)
    rep = _compare("sth2h", L, m, N, lhs, general, {"path": "general"})
    if not rep.ok:
        return rep
    shortcut = W_of_milnor(L, m, m + 1, path="shortcut")
    return _compare("sth2h", L, m, N, general, shortcut, {"path": "shortcut"})


def _shortcut_unchecked(L, m: int) -> TensorElement:
    word = _word(L)
    l = word.strands
    total = TensorElement.zero(l, m + 1)
    if m + 1 > l:
        return total
    mus = milnor_numbers(word, m + 1)
    for I in index_set(m + 1, l):
        if mus.get(I):
            total = total + varsigma_embedded(I, l, m + 1).scale(mus[I])
    return total.hbar_shift(m)


def _w_mu(L, m: int, order: int, check: bool, detail: dict) -> TensorElement:
    """``W(mu_m(L))``.  Unchecked, a Milnor map outside the tree span (possible
    only when the hypothesis fails) contributes zero and is noted in ``detail``."""
    word = _word(L)
    l = word.strands
    mm = milnor_map(word, m, check=check)
    try:
        trees = express_in_tree_basis(mm, l)
    except NotInSpan:
        if check:
            raise
        detail["milnor_map"] = "outside the tree span"
        return TensorElement.zero(l, order)
    return weight_W(trees, l, order)


def check_sth2(L, m: int, N: int | None = None, verify_hypothesis: bool = True) -> VerificationReport:
    """``project(J(L), t-part)`` mod ``h^(m+1)`` against ``W(mu_m(L))`` via the tree basis."""
    N = m + 1 if N is None else N
    _require_filtration(L, m, True, verify_hypothesis)
    J = invariant(L, N).truncate(m + 1)
    lhs = project(J, GradeSelector.t_part())
    detail: dict = {}
    rhs = _w_mu(L, m, m + 1, verify_hypothesis, detail)
    return _compare("sth2", L, m, N, lhs, rhs, detail)


# -- containments ------------------------------------------------------------

def _membership(theorem, L, m, N, x: TensorElement, allowed, reason) -> VerificationReport:
    """Pass iff every term of ``x`` at ``h^j`` satisfies ``allowed(key, j)``;
    the constant term must be exactly ``1``."""
    one = (ONE_MONO,) * x.strands
    for key in sorted(x.terms):
        v = x.terms[key]
        for j in range(v.order):
            c = v[j]
            if not c:
                continue
            if j == 0:
                if key == one and c == 1:
                    continue
                return VerificationReport(theorem, _describe(L), x.strands, m, N, "fail",
                                          _witness(key, 0, c, 1 if key == one else 0,
                                                   "constant term is not 1"))
            if not allowed(key, j):
                return VerificationReport(theorem, _describe(L), x.strands, m, N, "fail",
                                          _witness(key, j, c, 0, reason))
    if x.coefficient(one)[0] != 1:
        return VerificationReport(theorem, _describe(L), x.strands, m, N, "fail",
                                  _witness(one, 0, 0, 1, "constant term is not 1"))
    return VerificationReport(theorem, _describe(L), x.strands, m, N, "pass")


def check_containments(L, kind: str, N: int | None = None, m: int | None = None,
                       verify_hypothesis: bool = True) -> VerificationReport:
    """Membership predicates for the graded shape of ``J(L)`` mod ``h^N``.

    ``eqJT`` (``L`` in ``SL_m``): at ``h^j`` only degree ``<= j`` occurs, plus
    degree ``m+1`` at ``h^m``; powers above ``m`` are unconstrained.
    ``eqJT2`` (``L`` in ``SL^h_m``): ``J - W(mu^h_m(L))`` has at most ``j``
    nontrivial tensorands at ``h^j`` for ``j <= m``.
    ``corFinal`` (all Milnor invariants of length ``<= N`` vanish): degree
    ``<= j`` at every ``h^j``.
    ``corFinal2`` (link-homotopically trivial): at most ``j`` nontrivial
    tensorands at ``h^j`` for ``j < l``.
    ``lemma-sl4`` (``L`` in ``SL^h_m``): no term at ``h^j`` lies in the
    h-part of degree ``i`` when ``1 <= j <= i-2 <= m``.
    """
    if kind not in CONTAINMENT_KINDS:
        raise ValueError(f"unknown containment {kind!r}; expected one of {CONTAINMENT_KINDS}")
    word = _word(L)
    l = word.strands
    if kind in ("eqJT", "eqJT2", "lemma-sl4") and m is None:
        raise ValueError(f"{kind} needs m")
    if kind == "eqJT":
        N = m + 1 if N is None else N
        _require_filtration(word, m, True, verify_hypothesis)
        x = invariant(L, N).truncate(min(N, m + 1))
        return _membership(kind, L, m, N, x,
                           lambda k, j: degree(k) <= j or (j == m and degree(k) == m + 1),
                           "degree exceeds the h-power")
    if kind == "eqJT2":
        N = m + 1 if N is None else N
        _require_filtration(word, m, False, verify_hypothesis)
        order = min(N, m + 1)
        x = invariant(L, N).truncate(order)
        if verify_hypothesis:
            w = W_of_milnor(L, m, order, path="shortcut")
        else:
            w = _shortcut_unchecked(L, m).truncate(order)
        return _membership(kind, L, m, N, x - w, lambda k, j: supp(k) <= j,
                           "support exceeds the h-power after removing W(mu^h)")
    if kind == "corFinal":
        N = 3 if N is None else N
        _require_filtration(word, N, True, verify_hypothesis)
        x = invariant(L, N)
        return _membership(kind, L, m, N, x, lambda k, j: degree(k) <= j,
                           "degree exceeds the h-power")
    if kind == "corFinal2":
        N = l if N is None else N
        _require_filtration(word, l, False, verify_hypothesis)
        x = invariant(L, N).truncate(min(N, l))
        return _membership(kind, L, m, N, x, lambda k, j: supp(k) <= j,
                           "support exceeds the h-power")
    # lemma-sl4
    N = m + 1 if N is None else N
    _require_filtration(word, m, False, verify_hypothesis)
    x = invariant(L, N)

    def allowed(k, j):
        if any(sum(mono) > 1 for mono in k):
            return True
        i = degree(k)
        return not (1 <= j <= i - 2 <= m)

    return _membership(kind, L, m, N, x, allowed, "nonzero h-part of degree >= h-power + 2")


# -- cabling -----------------------------------------------------------------

def _nonrepeating(c: TreeCombination) -> TreeCombination:
    return TreeCombination([(k, t) for k, t in c if len(set(t.labels)) == len(t.labels)])


def check_cabling_diagram(L, m: int, p: int, verify_hypothesis: bool = True) -> VerificationReport:
    """Both squares relating ``L`` and its ``p``-cable, at ``h^m``.

    Quantum square: ``pi^h_m(Delta^(p)(pi^t_m(J(L)))) = pi^h_m(J(cable(L, p)))``.
    Diagram square: ``pi^h_m(Delta^(p)(W(mu_m(L))))`` equals the weight of the
    non-repeating part of the cabled tree combination, and equals
    ``W(mu^h_m(cable(L, p)))`` read off the cable's Milnor numbers.
    """
    if p <= m:
        raise ValueError(f"need p > m, got p={p}, m={m}")
    word = _word(L)
    l = word.strands
    _require_filtration(word, m, True, verify_hypothesis)
    order = m + 1
    sel_t = GradeSelector.bigraded(m + 1, m)
    sel_h = GradeSelector.h_bigraded(m + 1, m)
    cw = cable(word, p)

    top = project(delta_power(project(invariant(L, order), sel_t), p), sel_h)
    bottom = project(invariant(cw, order), sel_h)
    rep = _compare("cabling", L, m, order, top, bottom)
    if not rep.ok:
        rep.detail["square"] = "quantum"
        return rep

    try:
        trees = express_in_tree_basis(milnor_map(word, m, check=verify_hypothesis), l)
    except NotInSpan:
        if verify_hypothesis:
            raise
        trees = TreeCombination()
    w_top = project(delta_power(weight_W(trees, l, order), p), sel_h)
    w_trees = weight_W(_nonrepeating(tree_cable(trees, p)), p * l, order)
    w_bottom = _shortcut_unchecked(cw, m)
    for name, rhs in (("diagram-trees", w_trees), ("diagram-milnor", w_bottom)):
        rep = _compare("cabling", L, m, order, w_top, rhs)
        if not rep.ok:
            rep.detail["square"] = name
            return rep
    rep = _compare("cabling", L, m, order, bottom, w_bottom)
    rep.detail["square"] = "all"
    return rep
