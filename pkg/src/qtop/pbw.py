"""Multiplication of PBW monomials ``F^s H^n E^r`` in U_h(sl2) modulo h^N.

Internal engine shared by :mod:`qtop.uqsl2` and :mod:`qtop.tensor`.

Polynomials in H with HSeries coefficients ("H-polys") are plain dicts
``{degree: HSeries}``.  The commutation rules used are

    H F = F (H - 2),    E H = (H - 2) E,
    E F^a = F^a E + F^(a-1) * sum_{j<a} Omega(H - 2j),

with ``Omega(H) = (K - K^-1)/(q^(1/2) - q^(-1/2)) = sinh(hH/2)/sinh(h/2)``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .hpoly import HSeries, qpow

Mono = tuple  # (s, n, r) for F^s H^n E^r
ONE_MONO = (0, 0, 0)


# -- H-polynomials -----------------------------------------------------------

def hp_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for d, c in q.items():
        if d in out:
            s = out[d] + c
            if s:
                out[d] = s
            else:
                del out[d]
        elif c:
            out[d] = c
    return out


def hp_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for d1, c1 in p.items():
        for d2, c2 in q.items():
            c = c1 * c2
            if not c:
                continue
            d = d1 + d2
            if d in out:
                s = out[d] + c
                if s:
                    out[d] = s
                else:
                    del out[d]
            else:
                out[d] = c
    return out


def hp_shift(p: dict, a: int) -> dict:
    """``p(H + a)``."""
    if a == 0:
        return p
    out: dict = {}
    for n, c in p.items():
        for k in range(n + 1):
            w = comb(n, k) * a ** (n - k)
            term = c * w
            if k in out:
                out[k] = out[k] + term
            else:
                out[k] = term
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _linear_power(a: int, n: int) -> tuple:
    """Integer coefficients of ``(H + a)^n`` as ``((k, coeff), ...)``."""
    return tuple((k, comb(n, k) * a ** (n - k)) for k in range(n + 1) if comb(n, k) * a ** (n - k))


def hp_times_linear_power(p: dict, a: int, n: int) -> dict:
    """``p(H) * (H + a)^n``."""
    if n == 0:
        return p
    out: dict = {}
    for d1, c1 in p.items():
        for k, w in _linear_power(a, n):
            d = d1 + k
            term = c1 * w
            if d in out:
                out[d] = out[d] + term
            else:
                out[d] = term
    return {k: v for k, v in out.items() if v}


def k_poly(a, order: int) -> dict:
    """``K^a = exp(a h H / 2)`` as an H-poly."""
    a = mpq(a)
    out = {}
    for t in range(order):
        coef = (a / 2) ** t / factorial(t)
        if coef:
            out[t] = HSeries.monomial(t, order, coef)
    return out


# -- Omega and the E^c F^d reordering ----------------------------------------

@lru_cache(maxsize=None)
def _omega(order: int) -> tuple:
    # numerator / h = sum_{t odd} 2 (h/2)^t H^t / (t! h); denominator / h = 2 sinh(h/2)/h
    den = (qpow(mpq(1, 2), order + 1) - qpow(mpq(-1, 2), order + 1)).c[1:]
    u = HSeries(den, order).inv()
    out = {}
    for t in range(1, order + 1, 2):
        coef = mpq(2) / (2**t * factorial(t))
        out[t] = HSeries.monomial(t - 1, order, coef) * u
    return tuple(sorted((k, v) for k, v in out.items() if v))


def omega(order: int) -> dict:
    """``Omega`` as an H-poly (memoized per order)."""
    return dict(_omega(order))


@lru_cache(maxsize=None)
def _omega_sum(a: int, order: int) -> tuple:
    base = omega(order)
    acc: dict = {}
    for j in range(a):
        acc = hp_add(acc, hp_shift(base, -2 * j))
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _ef_expansion(c: int, d: int, order: int) -> tuple:
    """``E^c F^d = sum_k F^(d-k) P_k(H) E^(c-k)``; returns ``((k, P_k), ...)``."""
    if c == 0 or d == 0:
        return ((0, ((0, HSeries.one(order)),)),)
    prev = _ef_expansion(c - 1, d, order)
    acc: dict = {}
    for k, ptup in prev:
        p = dict(ptup)
        a = d - k
        # E F^a P E^b = F^a P(H-2) E^(b+1) + F^(a-1) OmegaSum_a(H) P(H) E^b
        acc[k] = hp_add(acc.get(k, {}), hp_shift(p, -2))
        if a >= 1:
            term = hp_mul(dict(_omega_sum(a, order)), p)
            acc[k + 1] = hp_add(acc.get(k + 1, {}), term)
    return tuple((k, tuple(sorted(p.items()))) for k, p in sorted(acc.items()) if p)


@lru_cache(maxsize=None)
def mono_mul(m1: Mono, m2: Mono, order: int) -> tuple:
    """Normally ordered product of two PBW monomials: ``((mono, HSeries), ...)``."""
    s1, n1, r1 = m1
    s2, n2, r2 = m2
    if r1 == 0 or s2 == 0:
        if r1 == 0 and s2 == 0:
            return (((s1 + s2, n1 + n2, r1 + r2), HSeries.one(order)),)
    out: dict = {}
    for k, ptup in _ef_expansion(r1, s2, order):
        # F^s1 H^n1 F^(s2-k) P_k E^(r1-k) H^n2 E^r2
        p = hp_times_linear_power(dict(ptup), -2 * (s2 - k), n1)
        p = hp_times_linear_power(p, -2 * (r1 - k), n2)
        s, r = s1 + s2 - k, r1 - k + r2
        for deg, coef in p.items():
            key = (s, deg, r)
            out[key] = out[key] + coef if key in out else coef
    return tuple((k, v) for k, v in sorted(out.items()) if v)


def pair_mul(x: dict, y: dict, order: int) -> dict:
    """Product in U (x) U of dicts ``{(m1, m2): HSeries}``."""
    out: dict = {}
    for (a1, a2), ca in x.items():
        va = ca.valuation
        for (b1, b2), cb in y.items():
            if va + cb.valuation >= order:
                continue
            c = ca * cb
            for p1, c1 in mono_mul(a1, b1, order):
                for p2, c2 in mono_mul(a2, b2, order):
                    coef = c * c1 * c2
                    if coef:
                        key = (p1, p2)
                        out[key] = out[key] + coef if key in out else coef
    return {k: v for k, v in out.items() if v}


def _hp_to_pairs_left(p: dict, right: Mono) -> dict:
    return {((0, d, 0), right): c for d, c in p.items()}


@lru_cache(maxsize=None)
def _generator_coproducts(order: int) -> dict:
    one = HSeries.one(order)
    kinv = k_poly(-1, order)
    k = k_poly(1, order)
    dF = {((1, 0, 0), (0, d, 0)): c for d, c in kinv.items()}
    dF[(ONE_MONO, (1, 0, 0))] = one
    dH = {((0, 1, 0), ONE_MONO): one, (ONE_MONO, (0, 1, 0)): one}
    dE = {((0, 0, 1), ONE_MONO): one}
    for d, c in k.items():
        dE[((0, d, 0), (0, 0, 1))] = c
    return {"F": dF, "H": dH, "E": dE}


@lru_cache(maxsize=None)
def _coproduct_mono(m: Mono, order: int) -> tuple:
    s, n, r = m
    gens = _generator_coproducts(order)
    acc = {(ONE_MONO, ONE_MONO): HSeries.one(order)}
    for g, e in (("F", s), ("H", n), ("E", r)):
        for _ in range(e):
            acc = pair_mul(acc, gens[g], order)
    return tuple(sorted(acc.items()))


def coproduct_mono(m: Mono, order: int) -> dict:
    """``Delta(F^s H^n E^r)`` as ``{(m1, m2): HSeries}``, generated multiplicatively."""
    return dict(_coproduct_mono(m, order))
