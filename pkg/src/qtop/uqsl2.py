"""The quantized enveloping algebra U_h(sl2) modulo h^N.

Elements are sparse maps from PBW monomials ``(s, n, r)`` (meaning
``F^s H^n E^r``) to :class:`HSeries`.  The relations are

    HE - EH = 2E,   HF - FH = -2F,   EF - FE = (K - K^-1)/(q^(1/2) - q^(-1/2))

with ``q = exp h`` and ``K = exp(hH/2)``; ``K`` is always expanded into
powers of ``H``.  Two-tensorand results are :class:`TensorElement` objects
with two strands.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .hpoly import HSeries, Q, qint, qpow
from .pbw import ONE_MONO, coproduct_mono, k_poly, mono_mul, omega
from .tensor import TensorElement, tensor_mul

__all__ = [
    "AlgebraElement", "normal_order", "alg_mul", "k_power", "coproduct",
    "coproduct_closed_form", "antipode", "antipode_at", "counit", "r_matrix", "casimir_c",
    "generator",
]


class AlgebraElement:
    """Element of U_h(sl2) mod h^N as ``{(s, n, r): HSeries}``."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms=None):
        self.order = order
        clean = {}
        for k, v in (terms or {}).items():
            v = v.truncate(order)
            if v.order < order:
                v = v.extend(order)
            if v:
                clean[tuple(k)] = v
        self.terms = clean

    @classmethod
    def one(cls, order):
        return cls(order, {ONE_MONO: HSeries.one(order)})

    @classmethod
    def monomial(cls, mono, order, coeff=1):
        c = coeff if isinstance(coeff, HSeries) else HSeries.const(coeff, order)
        return cls(order, {tuple(mono): c})

    @classmethod
    def from_hpoly(cls, p: dict, order: int):
        return cls(order, {(0, d, 0): c for d, c in p.items()})

    def __add__(self, other):
        order = min(self.order, other.order)
        out = {k: v.truncate(order) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return AlgebraElement(order, out)

    def __neg__(self):
        return AlgebraElement(self.order, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        if isinstance(other, HSeries):
            return AlgebraElement(min(self.order, other.order),
                                  {k: v * other for k, v in self.terms.items()})
        c = Q(other)
        return AlgebraElement(self.order, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = AlgebraElement.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, mono) -> HSeries:
        return self.terms.get(tuple(mono), HSeries.zero(self.order))

    def as_tensor(self) -> TensorElement:
        return TensorElement(1, self.order, {(k,): v for k, v in self.terms.items()})

    @classmethod
    def from_tensor(cls, t: TensorElement) -> "AlgebraElement":
        if t.strands != 1:
            raise ValueError("expected a one-strand element")
        return cls(t.order, {k[0]: v for k, v in t.terms.items()})

    def __repr__(self):
        return f"AlgebraElement(order={self.order}, terms={self.terms!r})"


def generator(letter: str, order: int) -> AlgebraElement:
    mono = {"F": (1, 0, 0), "H": (0, 1, 0), "E": (0, 0, 1)}[letter]
    return AlgebraElement.monomial(mono, order)


# -- literal rewriting -------------------------------------------------------

_ORDER = {"F": 0, "H": 1, "E": 2}


def _expand_word(word):
    letters = []
    for item in word:
        if isinstance(item, str):
            letters.extend(item)
        else:
            g, mult = item
            letters.extend(g * mult)
    for g in letters:
        if g not in _ORDER:
            raise ValueError(f"unknown generator {g!r}")
    return tuple(letters)


def normal_order(word, order: int) -> AlgebraElement:
    """Product of a word in E, F, H rewritten into PBW form by local moves.

    The moves are ``EF -> FE + Omega``, ``EH -> HE - 2E`` and ``HF -> FH - 2F``,
    always applied at the leftmost misordered pair.  This is deliberately a
    separate code path from the closed-form monomial product in
    :mod:`qtop.pbw`, so the two can check each other.
    """
    om = omega(order)
    pending = {_expand_word(word): HSeries.one(order)}
    done: dict = {}
    while pending:
        w, c = pending.popitem()
        pos = next((i for i in range(len(w) - 1) if _ORDER[w[i]] > _ORDER[w[i + 1]]), None)
        if pos is None:
            key = (w.count("F"), w.count("H"), w.count("E"))
            done[key] = done[key] + c if key in done else c
            continue
        a, b = w[pos], w[pos + 1]
        head, tail = w[:pos], w[pos + 2:]
        new = [(head + (b, a) + tail, c)]
        if (a, b) == ("E", "F"):
            for t, ct in om.items():
                new.append((head + ("H",) * t + tail, c * ct))
        elif (a, b) == ("E", "H"):
            new.append((head + ("E",) + tail, c * -2))
        else:  # (H, F)
            new.append((head + ("F",) + tail, c * -2))
        for nw, nc in new:
            if nc:
                pending[nw] = pending[nw] + nc if nw in pending else nc
    return AlgebraElement(order, done)


def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    order = min(x.order, y.order)
    out: dict = {}
    for m1, a in x.terms.items():
        va = a.valuation
        for m2, b in y.terms.items():
            if va + b.valuation >= order:
                continue
            ab = a * b
            for m, c in mono_mul(m1, m2, order):
                t = ab * c
                out[m] = out[m] + t if m in out else t
    return AlgebraElement(order, out)


def k_power(a, order: int) -> AlgebraElement:
    """``K^a = exp(a h H / 2)`` for a (half-)integer ``a``."""
    return AlgebraElement.from_hpoly(k_poly(a, order), order)


def counit(x: AlgebraElement) -> HSeries:
    return x.coefficient(ONE_MONO)


def coproduct(x: AlgebraElement) -> TensorElement:
    """``Delta_h`` extended multiplicatively from the generator formulas."""
    order = x.order
    out: dict = {}
    for m, c in x.terms.items():
        for (a, b), v in coproduct_mono(m, order).items():
            t = c * v
            out[(a, b)] = out[(a, b)] + t if (a, b) in out else t
    return TensorElement(2, order, out)


def _outer2(a: AlgebraElement, b: AlgebraElement) -> TensorElement:
    order = min(a.order, b.order)
    out = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            if c:
                out[(m1, m2)] = out[(m1, m2)] + c if (m1, m2) in out else c
    return TensorElement(2, order, out)


def coproduct_closed_form(mono, order: int) -> TensorElement:
    """``Delta(F^s H^n E^r)`` from the q-binomial expansion

        sum [s,j1]_q C(n,j2) [r,j3]_q  F^(s-j1) H^(n-j2) E^(r-j3) K^j3
                                    (x) F^j1 K^-(s-j1) H^j2 E^j3

    with each tensorand normally ordered by :func:`alg_mul`.
    """
    s, n, r = mono
    total = TensorElement.zero(2, order)
    mono_el = AlgebraElement.monomial
    for j1 in range(s + 1):
        for j2 in range(n + 1):
            for j3 in range(r + 1):
                coef = qint("qbinom", s, j1, order=order) * comb(n, j2) * qint("qbinom", r, j3, order=order)
                left = mono_el((s - j1, n - j2, r - j3), order) * k_power(j3, order)
                right = mono_el((j1, 0, 0), order) * k_power(-(s - j1), order) * mono_el((0, j2, j3), order)
                total = total + _outer2(left, right).scale(coef)
    return total


_S_CACHE: dict = {}


def _antipode_gen(letter: str, order: int) -> AlgebraElement:
    key = (letter, order)
    if key not in _S_CACHE:
        if letter == "H":
            val = -generator("H", order)
        elif letter == "E":
            val = -(k_power(-1, order) * generator("E", order))
        else:
            val = -(generator("F", order) * k_power(1, order))
        _S_CACHE[key] = val
    return _S_CACHE[key]


@lru_cache(maxsize=None)
def _antipode_mono(mono, order: int) -> AlgebraElement:
    return antipode(AlgebraElement.monomial(mono, order))


def antipode_at(x: TensorElement, slot: int) -> TensorElement:
    """Apply ``S`` to tensorand ``slot`` (0-based)."""
    out: dict = {}
    for k, v in x.terms.items():
        for m, c in _antipode_mono(k[slot], x.order).terms.items():
            nk = k[:slot] + (m,) + k[slot + 1:]
            t = v * c
            out[nk] = out[nk] + t if nk in out else t
    return TensorElement(x.strands, x.order, out)


def antipode(x: AlgebraElement) -> AlgebraElement:
    """``S(F^s H^n E^r) = S(E)^r S(H)^n S(F)^s``, normally ordered."""
    order = x.order
    out = AlgebraElement(order)
    for (s, n, r), c in x.terms.items():
        t = AlgebraElement.one(order)
        for letter, e in (("E", r), ("H", n), ("F", s)):
            for _ in range(e):
                t = t * _antipode_gen(letter, order)
        out = out + t * c
    return out


# -- R-matrix ----------------------------------------------------------------

def _d_factor(sign: int, order: int) -> TensorElement:
    """``D^(+-1) = exp(+-(h/4) H (x) H)``."""
    terms = {}
    for k in range(order):
        coef = mpq(sign, 4) ** k / factorial(k)
        terms[((0, k, 0), (0, k, 0))] = HSeries.monomial(k, order, coef)
    return TensorElement(2, order, terms)


@lru_cache(maxsize=None)
def r_matrix(sign: int, order: int) -> TensorElement:
    """``R`` (sign +1) or ``R^-1`` (sign -1) modulo h^order.

    R    = D  sum_n q^(n(n-1)/2) q^(-n/2) (q-1)^n / [n]_q!  F^n (x) E^n
    R^-1 = (sum_n (-1)^n q^(-n/2) (q-1)^n / [n]_q!  F^n (x) E^n) D^-1

    The inner sums are q-exponentials of ``+-(q^(1/2) - q^(-1/2)) F (x) E``.
    The ``q^(-n/2)`` in ``R`` is what makes ``R Delta(x) R^-1 = Delta^op(x)``
    hold with ``[E, F] = (K - K^-1)/(q^(1/2) - q^(-1/2))``; without it the
    leading term is ``(q - 1) F (x) E`` and the identity breaks at h^2.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    qm1 = qpow(1, order) - 1
    series = {}
    for n in range(order):
        inv_fact = qint("bracket-fact", n, order=order).inv()
        coef = qpow(mpq(-n, 2), order) * qm1**n * inv_fact
        if sign == 1:
            coef = coef * qpow(mpq(n * (n - 1), 2), order)
        else:
            coef = coef * (-1) ** n
        if coef:
            series[((n, 0, 0), (0, 0, n))] = coef
    body = TensorElement(2, order, series)
    if sign == 1:
        return tensor_mul(_d_factor(1, order), body)
    return tensor_mul(body, _d_factor(-1, order))


def casimir_c(order: int = 1) -> TensorElement:
    """``c = H (x) H / 2 + F (x) E + E (x) F``."""
    one = HSeries.one(order)
    return TensorElement(2, order, {
        ((0, 1, 0), (0, 1, 0)): one * mpq(1, 2),
        ((1, 0, 0), (0, 0, 1)): one,
        ((0, 0, 1), (1, 0, 0)): one,
    })
