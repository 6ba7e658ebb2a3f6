"""The acceptance suite: nine criteria, each a function returning a
:class:`CriterionResult`.  Used by ``tests/test_acceptance.py`` and by
``qtop selftest``.  All comparisons are exact over Q modulo ``h^N``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .diagrams import (
    W_of_milnor, eta_iso, tree_TI, tree_from_string, varsigma, varsigma_embedded,
    weight_w,
)
from .links import (
    BraidWord, StringLinkExpr, a_generator, b_commutator, cable, invariant, kink,
    linking_matrix,
)
from .milnor import (
    FreeWord, index_set, lh_representative, magnus, milnor_number, milnor_numbers,
)
from .pbw import ONE_MONO
from .tensor import (
    GradeSelector, TensorElement, coeff_h, contract_slots, coproduct_at, delta_power,
    embed, project,
)
from .uqsl2 import (
    AlgebraElement, alg_mul, antipode_at, casimir_c, coproduct, coproduct_closed_form,
    generator, normal_order, r_matrix,
)
from .verify import (
    HypothesisNotVerified, b_product, check_cabling_diagram, check_containments,
    check_prop_sc, check_sth1, check_sth2, check_sth2h, repeated_commutator,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "random_pure_braid"]


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    limit: float | None = None

    @property
    def passed(self) -> bool:
        in_time = self.limit is None or self.seconds < self.limit
        return self.checks > 0 and not self.failures and in_time

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:.0f}s)" if self.limit else ""
        out = f"[{status}] criterion {self.number}: {self.title}: {self.checks} checks, {self.seconds:.1f}s{budget}"
        for f in self.failures[:5]:
            out += f"\n    {f}"
        if self.limit is not None and self.seconds >= self.limit:
            out += "\n    time limit exceeded"
        return out


class _Run:
    def __init__(self, number, title, limit):
        self.res = CriterionResult(number, title, limit=limit)
        self.t0 = time.perf_counter()

    def check(self, ok: bool, what: str):
        self.res.checks += 1
        if not ok:
            self.res.failures.append(what)

    def report(self, rep, what: str, expect: str = "pass"):
        self.res.checks += 1
        if rep.status != expect:
            self.res.failures.append(f"{what}: {rep}")
        elif expect == "fail" and not rep.witness:
            self.res.failures.append(f"{what}: failure without witness")

    def done(self) -> CriterionResult:
        self.res.seconds = time.perf_counter() - self.t0
        return self.res


# -- input generators --------------------------------------------------------

def random_pure_braid(rng: random.Random, l: int, max_letters: int) -> BraidWord:
    """``u c u^-1`` with ``c`` a product of ``A_ij^(+-1)``; at most ``max_letters`` letters."""
    while True:
        u = BraidWord(l, tuple((rng.randint(1, l - 1), rng.choice((1, -1)))
                               for _ in range(rng.randint(0, 2))))
        core = BraidWord(l)
        budget = max_letters - 2 * len(u)
        pairs = [(i, j) for i in range(1, l) for j in range(i + 1, l + 1)]
        for _ in range(rng.randint(1, 4)):
            i, j = rng.choice(pairs)
            a = a_generator(i, j, l)
            if len(core) + len(a) > budget:
                break
            core = core * (a if rng.random() < 0.5 else a.inverse())
        w = u * core * u.inverse()
        if len(core) and len(w) <= max_letters:
            return w


def _random_monomials(rng, count, max_deg):
    out = set()
    while len(out) < count:
        s, n, r = (rng.randint(0, max_deg) for _ in range(3))
        if 0 < s + n + r <= max_deg:
            out.add((s, n, r))
    return sorted(out)


def _bracket_string(rng, labels):
    """Random full bracketing of the label list."""
    items = [str(x) for x in labels]
    while len(items) > 2:
        k = rng.randrange(len(items) - 1)
        items[k:k + 2] = [f"[{items[k]},{items[k + 1]}]"]
    return f"[{items[0]},{items[1]}]"


def random_tree(rng, degree: int, l: int):
    labels = [rng.randint(1, l) for _ in range(degree + 1)]
    rng.shuffle(labels)
    return tree_from_string(_bracket_string(rng, labels), l)


# -- criterion 1 -------------------------------------------------------------

def criterion_1(order: int = 4) -> CriterionResult:
    run = _Run(1, "Hopf axioms and R-matrix identities", 30)
    N = order
    rng = random.Random(1)
    monos = sorted(set(_random_monomials(rng, 8, 3)) | {(1, 0, 0), (0, 1, 0), (0, 0, 1)})
    one2 = TensorElement.one(2, N)
    for m in monos:
        x = AlgebraElement.monomial(m, N)
        d = coproduct(x)
        run.check(coproduct_at(d, 0) == coproduct_at(d, 1), f"coassociativity on {m}")
        left = TensorElement(1, N, {k[1:]: v for k, v in d.terms.items() if k[0] == ONE_MONO})
        right = TensorElement(1, N, {k[:1]: v for k, v in d.terms.items() if k[1] == ONE_MONO})
        run.check(left == x.as_tensor() and right == x.as_tensor(), f"counit on {m}")
        eps = TensorElement.zero(1, N)
        for side in (0, 1):
            run.check(contract_slots(antipode_at(d, side), 0, 1) == eps, f"antipode side {side} on {m}")
        run.check(d == coproduct_closed_form(m, N), f"closed-form coproduct on {m}")
        word = "F" * m[0] + "H" * m[1] + "E" * m[2]
        run.check(normal_order(word[::-1], N) == alg_mul(
            AlgebraElement.monomial((0, 0, m[2]), N),
            alg_mul(AlgebraElement.monomial((0, m[1], 0), N), AlgebraElement.monomial((m[0], 0, 0), N))),
            f"rewriting oracle on {word[::-1]}")
    for m1 in monos[:5]:
        for m2 in monos[:5]:
            x, y = AlgebraElement.monomial(m1, N), AlgebraElement.monomial(m2, N)
            run.check(coproduct(x * y) == coproduct(x) * coproduct(y), f"Delta multiplicative on {m1},{m2}")
    R, Ri = r_matrix(1, N), r_matrix(-1, N)
    run.check(R * Ri == one2 and Ri * R == one2, "R R^-1 = 1")
    R13, R23, R12 = embed(R, (1, 3), 3), embed(R, (2, 3), 3), embed(R, (1, 2), 3)
    run.check(coproduct_at(R, 0) == R13 * R23, "(Delta x id) R = R13 R23")
    run.check(coproduct_at(R, 1) == R13 * R12, "(id x Delta) R = R13 R12")
    run.check(R12 * R13 * R23 == R23 * R13 * R12, "Yang-Baxter")
    for g in "EFH":
        d = coproduct(generator(g, N))
        run.check(R * d * Ri == d.flip(), f"R Delta({g}) R^-1 = Delta^op({g})")
    c = casimir_c(1)
    for eps in (1, -1):
        Re = r_matrix(eps, N)
        run.check((coeff_h(Re) + coeff_h(Re.flip())).truncate(1) == c.scale(eps),
                  f"coeff_h(R^e) + coeff_h(R^e_21) = e c for e={eps}")
    return run.done()


# -- criterion 2 -------------------------------------------------------------

def criterion_2() -> CriterionResult:
    run = _Run(2, "linking-matrix formula for coeff_h(J)", 60)
    rng = random.Random(2)
    for k in range(25):
        l = rng.randint(2, 4)
        w = random_pure_braid(rng, l, 12)
        run.report(check_prop_sc(w), f"random braid {k}")
        wrong = [row[:] for row in linking_matrix(w)]
        wrong[0][1] += 1
        wrong[1][0] += 1
        run.check(check_prop_sc(w, linking=wrong).status == "fail",
                  f"random braid {k} against a perturbed matrix")
    for framing in (1, -1, 2, -2):
        for side in ("right", "left"):
            T = kink(framing, side)
            run.report(check_prop_sc(T, 3), f"kink framing {framing} on the {side}")
            run.check(T.linking_matrix() == [[framing]], f"kink framing {framing} read off")
    return run.done()


# -- criterion 3 -------------------------------------------------------------

def criterion_3() -> CriterionResult:
    run = _Run(3, "J(B_J) = 1 + vs_J h^m and the link-homotopy theorem", 300)
    rng = random.Random(3)
    for m in (1, 2, 3):
        for l in range(m + 1, 5):
            for J in index_set(m + 1, l):
                got = invariant(b_commutator(J, l), m + 1)
                want = TensorElement.one(l, m + 1) + varsigma_embedded(J, l, m + 1).hbar_shift(m)
                run.check(got == want, f"J(B_{J}) on {l} strands")
    lh_trivial = {
        3: [repeated_commutator(1, 2, a_generator(1, 3, 3), 3),
            repeated_commutator(2, 3, a_generator(1, 2, 3), 3)],
        4: [repeated_commutator(1, 2, a_generator(1, 3, 4), 4),
            repeated_commutator(3, 4, a_generator(2, 4, 4), 4)],
    }
    for m, l in ((1, 3), (2, 3), (2, 4), (3, 4)):
        idx = index_set(m + 1, l)
        for trial in range(3):
            exps = {I: rng.randint(-2, 2) for I in idx}
            extra = [rng.choice(lh_trivial[l])]
            L = b_product(exps, l, extra)
            run.report(check_sth1(L, m), f"product {exps} with lh-trivial factor, m={m}, l={l}")
    B = b_commutator((1, 2, 3), 3)
    run.report(check_sth1(StringLinkExpr.power(B, 3), 2), "B_123^3")
    run.check(project(invariant(StringLinkExpr.power(B, 3), 3), GradeSelector.h_part())
              == varsigma_embedded((1, 2, 3), 3, 3).scale(3).hbar_shift(2), "B_123^3 has coefficient 3")
    return run.done()


# -- criterion 4 -------------------------------------------------------------

def criterion_4() -> CriterionResult:
    run = _Run(4, "W o mu^h: tree-basis path, comb shortcut and J agree", None)
    rng = random.Random(4)
    cases = [(a_generator(1, 2, 2), 1), (b_commutator((1, 2, 3), 3), 2),
             (b_commutator((1, 3, 2, 4), 4), 3), (b_commutator((2, 3, 4), 4), 2)]
    for m, l in ((1, 3), (2, 3), (2, 4), (3, 4)):
        for _ in range(2):
            exps = {I: rng.randint(-2, 2) for I in index_set(m + 1, l)}
            extra = [repeated_commutator(1, 2, a_generator(1, l, l), l)]
            cases.append((b_product(exps, l, extra), m))
    for L, m in cases:
        run.report(check_sth2h(L, m), f"sth2h on {L}, m={m}")
        general = W_of_milnor(L, m, homotopy=True)
        shortcut = W_of_milnor(L, m, path="shortcut")
        hpart = project(invariant(L, m + 1), GradeSelector.h_part())
        run.check(general == shortcut == hpart, f"three-way agreement on {L}, m={m}")
    # inputs also in SL_m: the full t-part map projects onto the h-part map
    for L, m in cases[:4]:
        t_full = W_of_milnor(L, m)
        run.check(project(t_full, GradeSelector.h_part()) == W_of_milnor(L, m, path="shortcut"),
                  f"h-projection of the t-part map on {L}")
    return run.done()


# -- criterion 5 -------------------------------------------------------------

def criterion_5() -> CriterionResult:
    run = _Run(5, "concordance theorem on the repeated-index family", 120)
    for g in ((1, 3), (2, 3)):
        F = repeated_commutator(1, 2, a_generator(*g, 3), 3)
        mus = milnor_numbers(F, 4)
        run.check(not any(len(I) <= 3 for I in mus), f"family g=A{g}: mu of length <= 3 vanish")
        run.check(any(len(I) == 4 and len(set(I)) < 4 for I in mus), f"family g=A{g}: repeated mu of length 4")
        run.report(check_sth2(F, 2), f"sth2 on g=A{g}, m=2")
        run.report(check_sth2(F, 3), f"sth2 on g=A{g}, m=3")
        jt = project(invariant(F, 4), GradeSelector.t_part())
        run.check(not jt.is_zero(), f"g=A{g}: t-part of J is nonzero at h^3")
        w = F.to_word()
        for i in range(len(w)):
            letters = list(w.letters)
            p, e = letters[i]
            letters[i] = (p, -e)
            rep = check_sth2(BraidWord(3, tuple(letters)), 2, verify_hypothesis=False)
            run.report(rep, f"g=A{g} mutated at letter {i}", expect="fail")
    return run.done()


# -- criterion 6 -------------------------------------------------------------

def _mutants(L):
    w = L if isinstance(L, BraidWord) else L.to_word()
    for i in range(len(w)):
        letters = list(w.letters)
        p, e = letters[i]
        letters[i] = (p, -e)
        yield i, BraidWord(w.strands, tuple(letters))


def criterion_6() -> CriterionResult:
    run = _Run(6, "graded containments and their mutations", None)
    rng = random.Random(6)
    F13 = repeated_commutator(1, 2, a_generator(1, 3, 3), 3)
    F23 = repeated_commutator(1, 2, a_generator(2, 3, 3), 3)
    h = StringLinkExpr.comm(a_generator(1, 3, 3), a_generator(2, 3, 3))
    G = repeated_commutator(1, 2, h, 3)
    run.check(not milnor_numbers(G, 4), "G has all mu of length <= 4 vanishing")
    run.report(check_containments(BraidWord(3), "eqJT", m=2), "eqJT on the trivial braid")
    for name, L in (("F13", F13), ("F23", F23)):
        for m in (2, 3):
            run.report(check_containments(L, "eqJT", m=m), f"eqJT m={m} on {name}")
        run.report(check_containments(L, "corFinal2"), f"corFinal2 on {name}")
        run.report(check_containments(L, "corFinal2", N=4), f"corFinal2 N=4 on {name}")
    run.report(check_containments(G, "corFinal", N=4), "corFinal N=4 on G")
    run.report(check_containments(G, "corFinal2"), "corFinal2 on G")
    for m, l in ((1, 3), (2, 3), (2, 4), (3, 4)):
        exps = {I: rng.randint(-2, 2) for I in index_set(m + 1, l)}
        L = b_product(exps, l, [repeated_commutator(1, 2, a_generator(1, l, l), l)])
        run.report(check_containments(L, "lemma-sl4", m=m), f"lemma-sl4 m={m}, l={l}")
        run.report(check_containments(L, "eqJT2", m=m), f"eqJT2 m={m}, l={l}")
    # mutations: one flipped crossing, hypothesis check off, predicate fails with a witness
    plan = [(F13, "eqJT", {"m": 2}), (F23, "eqJT", {"m": 3}), (F13, "corFinal2", {}),
            (G, "corFinal", {"N": 3}), (b_commutator((1, 3, 2, 4), 4), "eqJT2", {"m": 3})]
    for L, kind, kw in plan:
        for i, M in _mutants(L):
            run.report(check_containments(M, kind, verify_hypothesis=False, **kw),
                       f"{kind} mutated at letter {i}", expect="fail")
    # lemma-sl4 only constrains supports >= j+2 at h^j, which one flip cannot
    # create; a flip is caught by the hypothesis check, two disjoint flips by the predicate
    B4 = b_commutator((1, 3, 2, 4), 4).to_word()
    pad = a_generator(1, 2, 4) * a_generator(1, 2, 4).inverse() * a_generator(3, 4, 4) * a_generator(3, 4, 4).inverse()
    L0 = pad * B4
    run.report(check_containments(L0, "lemma-sl4", m=3), "lemma-sl4 on the padded B_1324")
    for i, M in _mutants(L0):
        try:
            check_containments(M, "lemma-sl4", m=3)
            run.check(False, f"lemma-sl4 mutant {i} passed the hypothesis check")
        except HypothesisNotVerified as exc:
            run.check(exc.witness is not None, f"lemma-sl4 mutant {i} carries a Milnor witness")
    letters = list(L0.letters)
    for i in (2, 6):
        p, e = letters[i]
        letters[i] = (p, -e)
    run.report(check_containments(BraidWord(4, tuple(letters)), "lemma-sl4", m=3, verify_hypothesis=False),
               "lemma-sl4 with two disjoint flips", expect="fail")
    return run.done()


# -- criterion 7 -------------------------------------------------------------

def criterion_7() -> CriterionResult:
    run = _Run(7, "cabling squares and J(cable) = Delta^(p) J", 300)
    A = a_generator(1, 2, 2)
    B = StringLinkExpr.comm(a_generator(1, 2, 3), a_generator(2, 3, 3))
    run.report(check_cabling_diagram(A, 1, 2), "A_12, p=2")
    run.report(check_cabling_diagram(B, 2, 3), "[A_12,A_23], p=3")
    run.report(check_cabling_diagram(BraidWord(2), 1, 2), "trivial, p=2")
    for L, p in ((A, 2), (B, 3), (A.inverse(), 3)):
        lhs = invariant(cable(L.to_word() if not isinstance(L, BraidWord) else L, p), 3)
        rhs = delta_power(invariant(L, 3), p)
        run.check(lhs == rhs, f"J(cable({L}, {p})) = Delta^({p}) J mod h^3")
    return run.done()


# -- criterion 8 -------------------------------------------------------------

def criterion_8() -> CriterionResult:
    run = _Run(8, "weight system: AS, IHX, comb recursion, chords, eta", 60)
    rng = random.Random(8)
    for k in range(100):
        deg = rng.randint(1, 4)
        T = random_tree(rng, deg, 4)
        w = weight_w(T, 4)
        if T.nodes:
            node = rng.randrange(len(T.nodes))
            run.check(weight_w(T.flip(node), 4) == -w, f"AS on sample {k}")
        edges = T.internal_edges()
        if edges:
            a, b, c = T.ihx(rng.choice(edges))
            run.check((weight_w(a, 4) + weight_w(b, 4) + weight_w(c, 4)).is_zero(), f"IHX on sample {k}")
        if deg >= 2:
            e = eta_iso(T)
            bracket: dict = {}
            for key, v in e.items():
                for kk, s in ((key, 1), (key[1:] + key[:1], -1)):
                    bracket[kk] = bracket.get(kk, 0) + s * v
            run.check(not any(bracket.values()), f"eta lands in the bracket kernel on sample {k}")
    for m in range(1, 5):
        I = tuple(range(1, m + 2))
        run.check(weight_w(tree_TI(I, m + 1), m + 1) == varsigma_embedded(I, m + 1), f"comb recursion m={m}")
    run.check(len(varsigma(4)) == 12, "vs_4 has 12 terms")
    c = casimir_c(1)
    for i in range(1, 4):
        for j in range(1, 4):
            # c_ij read in the symmetric algebra: the degree-2 part of the embedding
            cij = project(embed(c, (i, j), 3), GradeSelector.bigraded(2, 0))
            run.check(weight_w(tree_TI((i, j), 3), 3) == cij, f"w_1(D_{i}{j}) = c_{i}{j}")
    return run.done()


# -- criterion 9 -------------------------------------------------------------

def _random_free_word(rng, n, length):
    return FreeWord(tuple((rng.randint(1, n), rng.choice((1, -1))) for _ in range(length)))


def criterion_9() -> CriterionResult:
    run = _Run(9, "Milnor invariants: duality table, Magnus, additivity, homotopy", 60)
    rng = random.Random(9)
    for m in (2, 3, 4):
        for l in range(m, 5):
            seqs = index_set(m, l)
            for J in seqs:
                w = b_commutator(J, l).to_word()
                for J2 in seqs:
                    want = 1 if J == J2 else 0
                    a, b = milnor_number(w, J2), milnor_number(w, J2, method="free")
                    run.check(a == b == want, f"mu_{J2}(B_{J}) on {l} strands: {a}, {b}, expected {want}")
    for k in range(20):
        u, v = _random_free_word(rng, 3, 6), _random_free_word(rng, 3, 6)
        run.check(magnus(u * v, 4) == magnus(u, 4) * magnus(v, 4), f"Magnus of a product, sample {k}")
        run.check(magnus(u.inverse(), 4) == magnus(u, 4).inverse(), f"Magnus of an inverse, sample {k}")
    # additivity of the first nonvanishing invariants
    pairs = []
    for _ in range(3):
        l = rng.randint(2, 4)
        pairs.append((random_pure_braid(rng, l, 10), random_pure_braid(rng, l, 10), 2))
    for m, l in ((2, 3), (3, 4)):
        pairs.append((b_product({I: rng.randint(-2, 2) for I in index_set(m + 1, l)}, l).to_word(),
                      b_product({I: rng.randint(-2, 2) for I in index_set(m + 1, l)}, l).to_word(), m + 1))
    F13 = repeated_commutator(1, 2, a_generator(1, 3, 3), 3).to_word()
    F23 = repeated_commutator(1, 2, a_generator(2, 3, 3), 3).to_word()
    pairs.append((F13, F23, 4))
    for L1, L2, k in pairs:
        mu1, mu2, mu12 = (milnor_numbers(x, k) for x in (L1, L2, L1 * L2))
        keys = {I for I in set(mu1) | set(mu2) | set(mu12) if len(I) == k}
        run.check(all(mu12.get(I, 0) == mu1.get(I, 0) + mu2.get(I, 0) for I in keys),
                  f"additivity at length {k}")
    for k in range(10):
        L = random_pure_braid(rng, 3, 16)
        R = lh_representative(L)
        a, b = milnor_numbers(L, 3), milnor_numbers(R, 3)
        nonrep = lambda d: {I: v for I, v in d.items() if len(set(I)) == len(I)}
        run.check(nonrep(a) == nonrep(b), f"link-homotopy representative of braid {k}")
    return run.done()


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def run_all(numbers=None) -> list:
    return [CRITERIA[n]() for n in sorted(numbers or CRITERIA)]
