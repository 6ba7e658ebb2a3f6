"""Elements of U_h(sl2)^(x l) modulo h^N and their symmetric-algebra gradings.

A key is an ``l``-tuple of PBW monomials ``(s, n, r)``.  The same stored data
is read either as ``F^s H^n E^r`` in U_h or, through the PBW identification
with the symmetric algebra, as ``f^s h^n e^r`` in S(sl2); gradings and
projections use the second reading, products the first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as cartesian

from .hpoly import HSeries, Q
from .pbw import ONE_MONO, coproduct_mono, mono_mul

__all__ = [
    "TensorElement", "GradeSelector", "StrandMismatch", "NotOnePlusH",
    "IndexOutOfRange", "embed", "tensor_mul", "coeff_h", "project",
    "delta_power", "nabla_power", "coproduct_at", "contract_slots", "supp", "degree",
]


class StrandMismatch(ValueError):
    pass


class NotOnePlusH(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def degree(key) -> int:
    """Total symmetric-algebra degree of a key."""
    return sum(s + n + r for s, n, r in key)


def supp(key) -> int:
    """Number of nontrivial tensorands of a key."""
    return sum(1 for m in key if m != ONE_MONO)


class TensorElement:
    """Sparse map ``key -> HSeries`` with ``strands`` tensorands, truncated at ``order``."""

    __slots__ = ("strands", "order", "terms")

    def __init__(self, strands: int, order: int, terms=None):
        self.strands = strands
        self.order = order
        clean = {}
        for k, v in (terms or {}).items():
            if len(k) != strands:
                raise StrandMismatch(f"key {k} does not have {strands} entries")
            v = v.truncate(order)
            if v.order < order:
                v = v.extend(order)
            if v:
                clean[tuple(tuple(m) for m in k)] = v
        self.terms = clean

    @classmethod
    def _raw(cls, strands, order, terms):
        t = object.__new__(cls)
        t.strands, t.order, t.terms = strands, order, terms
        return t

    @classmethod
    def one(cls, strands: int, order: int) -> "TensorElement":
        return cls._raw(strands, order, {(ONE_MONO,) * strands: HSeries.one(order)})

    @classmethod
    def zero(cls, strands: int, order: int) -> "TensorElement":
        return cls._raw(strands, order, {})

    @classmethod
    def monomial(cls, key, order: int, coeff=None) -> "TensorElement":
        coeff = HSeries.one(order) if coeff is None else coeff
        return cls(len(key), order, {tuple(key): coeff})

    # -- linear structure ----------------------------------------------------

    def _check(self, other):
        if self.strands != other.strands:
            raise StrandMismatch(f"{self.strands} vs {other.strands} strands")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        order = min(self.order, other.order)
        out = {k: v.truncate(order) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            v = v.truncate(order)
            out[k] = out[k] + v if k in out else v
        return TensorElement._raw(self.strands, order, {k: v for k, v in out.items() if v})

    def __neg__(self):
        return TensorElement._raw(self.strands, self.order, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        if isinstance(c, HSeries):
            terms = {k: v * c for k, v in self.terms.items()}
            return TensorElement(self.strands, min(self.order, c.order), terms)
        c = Q(c)
        return TensorElement._raw(self.strands, self.order,
                                  {k: v * c for k, v in self.terms.items() if c})

    def hbar_shift(self, k: int) -> "TensorElement":
        """Multiply by ``h^k``."""
        return TensorElement(self.strands, self.order, {key: v.shift(k) for key, v in self.terms.items()})

    def truncate(self, order: int) -> "TensorElement":
        if order >= self.order:
            return self
        return TensorElement(self.strands, order, self.terms)

    def with_order(self, order: int) -> "TensorElement":
        """Re-read at another order, padding with zeros (for elements exact in h)."""
        return TensorElement(self.strands, order, self.terms)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.strands != other.strands:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.strands, self.order, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, key) -> HSeries:
        return self.terms.get(tuple(key), HSeries.zero(self.order))

    def hbar_part(self, j: int) -> dict:
        """``{key: rational}`` coefficients of ``h^j``."""
        return {k: v[j] for k, v in self.terms.items() if j < v.order and v[j]}

    def first_difference(self, other) -> tuple | None:
        """First (key, hbar power, lhs, rhs) where the two elements differ, in canonical order."""
        diff = self - other
        order = min(self.order, other.order)
        for key in sorted(diff.terms):
            for j in range(order):
                if diff.terms[key][j]:
                    return key, j, self.coefficient(key)[j], other.coefficient(key)[j]
        return None

    def map_keys(self, fn) -> "TensorElement":
        out: dict = {}
        strands = None
        for k, v in self.terms.items():
            nk = fn(k)
            strands = len(nk)
            out[nk] = out[nk] + v if nk in out else v
        if strands is None:
            strands = len(fn((ONE_MONO,) * self.strands))
        return TensorElement(strands, self.order, out)

    def flip(self) -> "TensorElement":
        """Reverse the order of tensorands (``x_21`` for two strands)."""
        return self.map_keys(lambda k: k[::-1])

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "strands": self.strands,
            "order": self.order,
            "terms": [
                {"key": [list(m) for m in k], "coeffs": self.terms[k].to_strings()}
                for k in sorted(self.terms)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "TensorElement":
        terms = {}
        for t in obj["terms"]:
            key = tuple(tuple(int(x) for x in m) for m in t["key"])
            terms[key] = HSeries.from_strings(t["coeffs"])
        return cls(obj["strands"], obj["order"], terms)

    @classmethod
    def from_json(cls, text: str) -> "TensorElement":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        return f"TensorElement(strands={self.strands}, order={self.order}, terms={len(self.terms)})"

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for k in sorted(self.terms, key=lambda k: (self.terms[k].valuation, degree(k), k)):
            lines.append(f"{self.terms[k]!r}  *  " + " (x) ".join(_mono_str(m) for m in k))
        return "\n".join(lines)


def _mono_str(m) -> str:
    s, n, r = m
    parts = [f"{g}^{e}" if e > 1 else g for g, e in (("F", s), ("H", n), ("E", r)) if e]
    return "".join(parts) or "1"


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    """Product in U_h^(x l); slots that are 1 on either side are not reordered."""
    if x.strands != y.strands:
        raise StrandMismatch(f"{x.strands} vs {y.strands} strands")
    order = min(x.order, y.order)
    l = x.strands
    out: dict = {}
    yterms = [(k, v, v.valuation) for k, v in y.terms.items()]
    for k1, a in x.terms.items():
        va = a.valuation
        for k2, b, vb in yterms:
            if va + vb >= order:
                continue
            coef = a * b
            slots = []
            for i in range(l):
                m1, m2 = k1[i], k2[i]
                if m1 == ONE_MONO:
                    slots.append(((m2, None),))
                elif m2 == ONE_MONO:
                    slots.append(((m1, None),))
                else:
                    slots.append(mono_mul(m1, m2, order))
            _accumulate(out, slots, coef, order)
    return TensorElement._raw(l, order, {k: v for k, v in out.items() if v})


def _accumulate(out: dict, slots, coef: HSeries, order: int) -> None:
    base_val = coef.valuation
    if all(len(s) == 1 and s[0][1] is None for s in slots):
        key = tuple(s[0][0] for s in slots)
        out[key] = out[key] + coef if key in out else coef
        return
    for combo in cartesian(*slots):
        c = coef
        v = base_val
        skip = False
        for _, sc in combo:
            if sc is not None:
                v += sc.valuation
                if v >= order:
                    skip = True
                    break
                c = c * sc
        if skip or not c:
            continue
        key = tuple(m for m, _ in combo)
        out[key] = out[key] + c if key in out else c


def embed(x: TensorElement, positions, strands: int) -> TensorElement:
    """``y^(l)_{j1...jm}``: place tensorand k of ``x`` into strand ``positions[k]`` (1-based).

    Repeated positions multiply inside that strand in the order given.
    """
    positions = tuple(positions)
    if len(positions) != x.strands:
        raise StrandMismatch("one position per tensorand is required")
    for p in positions:
        if not 1 <= p <= strands:
            raise IndexOutOfRange(f"strand index {p} not in 1..{strands}")
    order = x.order
    if len(set(positions)) == len(positions):
        out = {}
        for k, v in x.terms.items():
            key = [ONE_MONO] * strands
            for m, p in zip(k, positions):
                key[p - 1] = m
            out[tuple(key)] = v
        return TensorElement._raw(strands, order, out)
    out: dict = {}
    for k, v in x.terms.items():
        # per target strand, the ordered list of factors landing there
        partial = [((ONE_MONO,) * strands, v)]
        for m, p in zip(k, positions):
            nxt = []
            for key, c in partial:
                cur = key[p - 1]
                if cur == ONE_MONO:
                    prods = ((m, None),)
                elif m == ONE_MONO:
                    prods = ((cur, None),)
                else:
                    prods = mono_mul(cur, m, order)
                for pm, pc in prods:
                    nc = c if pc is None else c * pc
                    if nc:
                        nk = key[: p - 1] + (pm,) + key[p:]
                        nxt.append((nk, nc))
            partial = nxt
        for key, c in partial:
            out[key] = out[key] + c if key in out else c
    return TensorElement._raw(strands, order, {k: v for k, v in out.items() if v})


def contract_slots(x: TensorElement, i: int, j: int) -> TensorElement:
    """Replace slot ``i`` by the product ``slot_i * slot_j`` and delete slot ``j`` (0-based)."""
    if i == j:
        raise ValueError("distinct slots required")
    order = x.order
    out: dict = {}
    for k, v in x.terms.items():
        a, b = k[i], k[j]
        if a == ONE_MONO:
            prods = ((b, None),)
        elif b == ONE_MONO:
            prods = ((a, None),)
        else:
            prods = mono_mul(a, b, order)
        rest = list(k)
        for pm, pc in prods:
            rest[i] = pm
            nk = tuple(m for t, m in enumerate(rest) if t != j)
            c = v if pc is None else v * pc
            if c:
                out[nk] = out[nk] + c if nk in out else c
    return TensorElement._raw(x.strands - 1, order, {k: v for k, v in out.items() if v})


def outer(x: TensorElement, y: TensorElement) -> TensorElement:
    """Tensor product ``x (x) y`` on ``x.strands + y.strands`` strands."""
    order = min(x.order, y.order)
    out = {}
    for k1, a in x.terms.items():
        va = a.valuation
        for k2, b in y.terms.items():
            if va + b.valuation >= order:
                continue
            c = a * b
            if c:
                out[k1 + k2] = c
    return TensorElement._raw(x.strands + y.strands, order, out)


def permute(x: TensorElement, perm) -> TensorElement:
    """New element whose slot ``t`` is old slot ``perm[t]`` (0-based)."""
    return TensorElement._raw(x.strands, x.order,
                              {tuple(k[p] for p in perm): v for k, v in x.terms.items()})


def coeff_h(x: TensorElement) -> TensorElement:
    """``(x - 1)/h`` for ``x = 1 mod h``, returned at order ``N - 1``."""
    if x.order < 2:
        raise ValueError("need order >= 2 to read the h-linear coefficient")
    one_key = (ONE_MONO,) * x.strands
    for k, v in x.terms.items():
        expected = 1 if k == one_key else 0
        if v[0] != expected:
            raise NotOnePlusH(f"constant term at {k} is {v[0]}")
    if one_key not in x.terms:
        raise NotOnePlusH("constant term is 0")
    out = {}
    for k, v in x.terms.items():
        c = HSeries._raw(v.c[1:])
        if c:
            out[k] = c
    return TensorElement._raw(x.strands, x.order - 1, out)


@dataclass(frozen=True)
class GradeSelector:
    """Which (key, hbar-power) pairs a projection keeps.

    kinds: ``t-part`` (degree j+1 at h^j, j >= 1), ``h-part`` (same, each
    tensorand of degree <= 1), ``bigraded`` (degree i at h^j), ``h-bigraded``
    (degree i at h^j with every tensorand of degree <= 1), ``supp-at-most``
    (at most k nontrivial tensorands, any power).
    """

    kind: str
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("t-part", "h-part", "bigraded", "h-bigraded", "supp-at-most"):
            raise ValueError(f"unknown grade selector {self.kind!r}")
        if self.i < 0 or self.j < 0:
            raise ValueError("grades must be >= 0")

    def keeps(self, key, power: int) -> bool:
        kind = self.kind
        if kind == "supp-at-most":
            return supp(key) <= self.i
        d = degree(key)
        if kind == "t-part":
            return power >= 1 and d == power + 1
        if kind == "h-part":
            return power >= 1 and d == power + 1 and all(sum(m) <= 1 for m in key)
        if kind == "bigraded":
            return d == self.i and power == self.j
        return d == self.i and power == self.j and all(sum(m) <= 1 for m in key)

    @classmethod
    def t_part(cls):
        return cls("t-part")

    @classmethod
    def h_part(cls):
        return cls("h-part")

    @classmethod
    def bigraded(cls, i, j):
        return cls("bigraded", i, j)

    @classmethod
    def h_bigraded(cls, i, j):
        return cls("h-bigraded", i, j)

    @classmethod
    def supp_at_most(cls, k):
        return cls("supp-at-most", k)


def project(x: TensorElement, sel: GradeSelector) -> TensorElement:
    out = {}
    for k, v in x.terms.items():
        keep = [j for j in range(v.order) if v[j] and sel.keeps(k, j)]
        if keep:
            out[k] = v.select(set(keep))
    return TensorElement._raw(x.strands, x.order, out)


def delta_power(x: TensorElement, p: int) -> TensorElement:
    """Apply the iterated coproduct ``Delta^[p]`` to every tensorand (``p*l`` strands out)."""
    if p < 0:
        raise ValueError("p must be >= 0")
    if p == 1:
        return x
    order = x.order
    out: dict = {}
    for k, v in x.terms.items():
        pieces = [_iterated_coproduct(m, p, order) for m in k]
        base_val = v.valuation
        for combo in cartesian(*pieces):
            c = v
            val = base_val
            for _, pc in combo:
                val += pc.valuation
                if val >= order:
                    break
                c = c * pc
            else:
                if c:
                    key = tuple(m for part, _ in combo for m in part)
                    out[key] = out[key] + c if key in out else c
    return TensorElement._raw(x.strands * p, order, {k: v for k, v in out.items() if v})


_ITER_CACHE: dict = {}


def _iterated_coproduct(m, p: int, order: int) -> tuple:
    """``Delta^[p](m)`` as ``((key_p_tuple, HSeries), ...)``; ``Delta^[p] = (Delta (x) 1) Delta^[p-1]``."""
    ck = (m, p, order)
    if ck in _ITER_CACHE:
        return _ITER_CACHE[ck]
    if p == 0:
        res = (((), HSeries.one(order)),) if m == ONE_MONO else ()
    elif p == 1:
        res = (((m,), HSeries.one(order)),)
    else:
        acc: dict = {}
        for key, c in _iterated_coproduct(m, p - 1, order):
            for (a, b), c2 in coproduct_mono(key[0], order).items():
                cc = c * c2
                if cc:
                    nk = (a, b) + key[1:]
                    acc[nk] = acc[nk] + cc if nk in acc else cc
        res = tuple((k, v) for k, v in sorted(acc.items()) if v)
    _ITER_CACHE[ck] = res
    return res


def coproduct_at(x: TensorElement, slot: int) -> TensorElement:
    """Apply ``Delta`` to tensorand ``slot`` (0-based); one more strand out."""
    if not 0 <= slot < x.strands:
        raise IndexOutOfRange(f"slot {slot} not in 0..{x.strands - 1}")
    order = x.order
    out: dict = {}
    for k, v in x.terms.items():
        for (a, b), c in coproduct_mono(k[slot], order).items():
            t = v * c
            if t:
                nk = k[:slot] + (a, b) + k[slot + 1:]
                out[nk] = out[nk] + t if nk in out else t
    return TensorElement._raw(x.strands + 1, order, {k: v for k, v in out.items() if v})


def nabla_power(x: TensorElement, p: int) -> TensorElement:
    """Multiply each consecutive block of ``p`` tensorands together."""
    if p < 1 or x.strands % p:
        raise StrandMismatch(f"{x.strands} strands are not divisible into blocks of {p}")
    l = x.strands // p
    y = x
    for block in range(l):
        for _ in range(p - 1):
            y = contract_slots(y, block, block + 1)
    return y
