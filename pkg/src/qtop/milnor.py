"""Milnor invariants of pure braids via the Artin action and the Magnus expansion.

Artin action: ``s_p`` sends ``a_p -> a_p a_(p+1) a_p^-1``, ``a_(p+1) -> a_p``
and fixes the other generators; a word ``x_1 ... x_k`` acts by
``A(x_1) o ... o A(x_k)``.  A pure braid sends ``a_j`` to ``w_j a_j w_j^-1``
and the longitude of strand ``j`` is ``w_j a_j^-e`` with ``e`` the
``X_j``-coefficient of the Magnus expansion of ``w_j`` (framing zero).

Two routes compute longitudes: exact free words (:func:`artin_of_braid`) and
a degree-truncated route that only tracks Magnus expansions of the
conjugators (:func:`magnus_longitudes`).  The second is the default for
Milnor numbers; the first is kept as a cross-check.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb, factorial

from .links import BraidWord, StringLinkExpr, b_commutator
from .hpoly import DomainError

__all__ = [
    "FreeWord", "MagnusPoly", "ArtinAuto", "NotInFiltration", "artin_of_braid",
    "longitude", "magnus", "magnus_longitudes", "milnor_number", "index_set",
    "milnor_map", "lh_representative", "parse_index", "in_sl", "in_slh",
    "first_nonvanishing_length", "milnor_numbers", "index_set_size", "commutator",
]


class NotInFiltration(ValueError):
    pass


# -- free groups -------------------------------------------------------------

class FreeWord(tuple):
    """Freely reduced word: a tuple of ``(generator, +-1)``."""

    def __new__(cls, letters=()):
        out = []
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError("exponents are +-1")
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return super().__new__(cls, out)

    @classmethod
    def gen(cls, j: int, e: int = 1) -> "FreeWord":
        return cls(((j, 1 if e > 0 else -1),) * abs(e))

    def __mul__(self, other):
        return FreeWord(tuple(self) + tuple(other))

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -e) for g, e in reversed(self))

    def substitute(self, images: dict) -> "FreeWord":
        out = []
        for g, e in self:
            im = images.get(g, FreeWord.gen(g))
            out.extend(im if e == 1 else im.inverse())
        return FreeWord(out)

    def __repr__(self):
        if not self:
            return "FreeWord(1)"
        return "FreeWord(" + " ".join(f"a{g}" if e == 1 else f"a{g}^-1" for g, e in self) + ")"


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    return u * v * u.inverse() * v.inverse()


# -- Magnus expansion --------------------------------------------------------

class MagnusPoly:
    """Noncommutative polynomial in X_1..X_l with integer coefficients, truncated at degree ``d``."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms=None):
        self.d = d
        self.terms = {tuple(k): v for k, v in (terms or {}).items() if v and len(k) <= d}

    @classmethod
    def one(cls, d):
        return cls(d, {(): 1})

    @classmethod
    def letter(cls, j: int, e: int, d: int) -> "MagnusPoly":
        """Expansion of ``a_j^e`` for ``e = +-1``."""
        if e == 1:
            return cls(d, {(): 1, (j,): 1})
        return cls(d, {(j,) * k: (-1) ** k for k in range(d + 1)})

    def __mul__(self, other: "MagnusPoly") -> "MagnusPoly":
        d = min(self.d, other.d)
        out: dict = {}
        for a, x in self.terms.items():
            la = len(a)
            if la > d:
                continue
            for b, y in other.terms.items():
                if la + len(b) <= d:
                    k = a + b
                    out[k] = out.get(k, 0) + x * y
        return MagnusPoly(d, out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MagnusPoly(min(self.d, other.d), out)

    def __sub__(self, other):
        return self + MagnusPoly(other.d, {k: -v for k, v in other.terms.items()})

    def inverse(self) -> "MagnusPoly":
        """Inverse of a series with constant term 1."""
        if self.terms.get((), 0) != 1:
            raise ValueError("only series with constant term 1 are inverted")
        x = self - MagnusPoly.one(self.d)
        out = MagnusPoly.one(self.d)
        power = MagnusPoly.one(self.d)
        for k in range(1, self.d + 1):
            power = power * x
            sign = -1 if k % 2 else 1
            out = out + MagnusPoly(self.d, {w: sign * c for w, c in power.terms.items()})
        return out

    def __eq__(self, other):
        if not isinstance(other, MagnusPoly):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, word) -> int:
        return self.terms.get(tuple(word), 0)

    def homogeneous(self, k: int) -> dict:
        return {w: c for w, c in self.terms.items() if len(w) == k}

    def __repr__(self):
        return f"MagnusPoly(d={self.d}, {dict(sorted(self.terms.items()))})"


def magnus(w, d: int) -> MagnusPoly:
    """Magnus expansion ``a_j -> 1 + X_j`` truncated at total degree ``d``."""
    out = MagnusPoly.one(d)
    for g, e in w:
        out = out * MagnusPoly.letter(g, e, d)
    return out


# -- Artin action ------------------------------------------------------------

def _letter_action(p: int, e: int) -> dict:
    """Images of ``a_p, a_(p+1)`` as ``(u, j)`` meaning ``u a_j u^-1``."""
    if e == 1:
        return {p: (FreeWord.gen(p), p + 1), p + 1: (FreeWord(), p)}
    return {p: (FreeWord(), p + 1), p + 1: (FreeWord.gen(p + 1, -1), p)}


class ArtinAuto:
    """Automorphism ``a_j -> w_j a_j w_j^-1`` of the free group, with the ``w_j`` kept."""

    def __init__(self, conjugators: dict, targets: dict | None = None):
        self.conjugators = dict(conjugators)
        self.targets = dict(targets or {j: j for j in conjugators})

    def image(self, j: int) -> FreeWord:
        w = self.conjugators[j]
        return w * FreeWord.gen(self.targets[j]) * w.inverse()

    @property
    def images(self) -> dict:
        return {j: self.image(j) for j in self.conjugators}

    def __call__(self, w: FreeWord) -> FreeWord:
        return FreeWord(w).substitute(self.images)

    def compose(self, other: "ArtinAuto") -> "ArtinAuto":
        """``self o other``."""
        conj, targ = {}, {}
        for j in other.conjugators:
            u, t = other.conjugators[j], other.targets[j]
            conj[j] = self(u) * self.conjugators[t]
            targ[j] = self.targets[t]
        return ArtinAuto(conj, targ)

    def preserves_product(self) -> bool:
        gens = sorted(self.conjugators)
        prod = FreeWord((j, 1) for j in gens)
        return self(prod) == prod


def artin_of_braid(L) -> ArtinAuto:
    """The Artin automorphism of a pure braid, as exact free words."""
    word = L if isinstance(L, BraidWord) else L.to_word()
    word.require_pure()
    l = word.strands
    auto = ArtinAuto({j: FreeWord() for j in range(1, l + 1)})
    for p, e in word.letters:
        step = _letter_action(p, e)
        conj = {j: step.get(j, (FreeWord(), j))[0] for j in range(1, l + 1)}
        targ = {j: step.get(j, (FreeWord(), j))[1] for j in range(1, l + 1)}
        auto = auto.compose(ArtinAuto(conj, targ))
    return auto


def longitude(L, j: int, k: int | None = None) -> FreeWord:
    """Framing-zero longitude of strand ``j`` as a free word.

    ``k`` (the nilpotency class) is accepted for symmetry with the
    truncated route; truncation happens when the word is expanded.
    """
    w = artin_of_braid(L).conjugators[j]
    e = magnus(w, 1).coeff((j,))
    return w * FreeWord.gen(j, -e)


def magnus_longitudes(L, d: int) -> dict:
    """``{j: Magnus expansion of the j-th longitude}`` truncated at degree ``d``.

    Only the expansions of the conjugators are tracked, so the cost does not
    depend on free-word growth.
    """
    word = L if isinstance(L, BraidWord) else L.to_word()
    word.require_pure()
    l = word.strands
    conj = {j: MagnusPoly.one(d) for j in range(1, l + 1)}
    targ = {j: j for j in range(1, l + 1)}

    def image(j, e):
        w = conj[j]
        t = targ[j]
        return w * MagnusPoly.letter(t, e, d) * w.inverse()

    for p, e in word.letters:
        step = _letter_action(p, e)
        new_conj, new_targ = dict(conj), dict(targ)
        for j, (u, t) in step.items():
            phi_u = MagnusPoly.one(d)
            for g, s in u:
                phi_u = phi_u * image(g, s)
            new_conj[j] = phi_u * conj[t]
            new_targ[j] = targ[t]
        conj, targ = new_conj, new_targ
    out = {}
    for j in range(1, l + 1):
        e = conj[j].coeff((j,))
        fix = MagnusPoly.letter(j, -1 if e > 0 else 1, d)
        w = conj[j]
        for _ in range(abs(e)):
            w = w * fix
        out[j] = w
    return out


# -- Milnor numbers ----------------------------------------------------------

def parse_index(text) -> tuple:
    """``"123"`` or ``"(1,2,3)"`` or a sequence -> tuple of ints."""
    if isinstance(text, (tuple, list)):
        return tuple(int(x) for x in text)
    s = str(text).strip()
    if "," in s or s.startswith("("):
        return tuple(int(x) for x in s.strip("()").split(",") if x.strip())
    return tuple(int(ch) for ch in s)


def milnor_number(L, I, method: str = "magnus") -> int:
    """``mu_I(L)`` for ``I = i_1 ... i_m j``: coefficient of ``X_i1 ... X_im`` in ``E(l_j)``."""
    I = parse_index(I)
    if len(I) < 2:
        raise DomainError("Milnor invariants need at least two indices")
    word = L if isinstance(L, BraidWord) else L.to_word()
    for i in I:
        if not 1 <= i <= word.strands:
            raise DomainError(f"index {i} not in 1..{word.strands}")
    *head, j = I
    if method == "free":
        return magnus(longitude(word, j), len(head)).coeff(head)
    return magnus_longitudes(word, len(head))[j].coeff(head)


def milnor_numbers(L, length: int) -> dict:
    """All ``mu_I`` with ``2 <= |I| <= length``, keyed by index tuple (nonzero ones only)."""
    word = L if isinstance(L, BraidWord) else L.to_word()
    longs = magnus_longitudes(word, length - 1)
    out = {}
    for j, poly in longs.items():
        for w, c in poly.terms.items():
            if w and c:
                out[w + (j,)] = c
    return out


def first_nonvanishing_length(L, cap: int) -> int | None:
    """Smallest ``|I|`` with ``mu_I(L) != 0`` (searching up to ``cap``), else ``None``."""
    mus = milnor_numbers(L, cap)
    return min((len(I) for I in mus), default=None)


def in_sl(L, m: int) -> bool:
    """All Milnor invariants of length ``<= m`` vanish."""
    if m < 2:
        return True
    return not milnor_numbers(L, m)


def in_slh(L, m: int) -> bool:
    """All non-repeating Milnor invariants of length ``<= m`` vanish."""
    if m < 2:
        return True
    return not any(len(set(I)) == len(I) for I in milnor_numbers(L, m))


def index_set(m: int, l: int, variant: str = "comb-dual") -> list:
    """Index sequences of length ``m`` for the link-homotopy classification.

    ``variant="comb-dual"`` (default): non-repeating ``j_1 ... j_m`` with
    ``j_1 < j_i < j_m`` for ``1 < i < m``.  These are exactly the sequences
    for which ``mu_J'(B_J) = 1 if J = J' else 0``: the Lie word read off
    ``B_J`` at strand ``j_m`` is the left-normed bracket starting with the
    smallest letter, and those brackets are dual to the words starting with
    that letter.

    ``variant="last-two-largest"``: ``j_i < j_(m-1) < j_m`` for ``i <= m-2``.
    Same size and also a complete set of coordinates, but for ``m >= 4`` the
    braids ``B_J`` over it are not dual to it (swapping ``j_1, j_2`` only
    changes the sign of ``B_J`` at the Milnor level).
    """
    if not 2 <= m <= l:
        raise DomainError(f"need 2 <= m <= l, got m={m}, l={l}")
    out = []
    for subset in combinations(range(1, l + 1), m):
        if variant == "comb-dual":
            first, *mid, last = subset
            for perm in permutations(mid):
                out.append((first,) + tuple(perm) + (last,))
        elif variant == "last-two-largest":
            *low, a, b = subset
            for perm in permutations(low):
                out.append(tuple(perm) + (a, b))
        else:
            raise DomainError(f"unknown index set variant {variant!r}")
    return sorted(out)


def index_set_size(m: int, l: int) -> int:
    return comb(l, m) * factorial(m - 2)


def milnor_map(L, m: int, check: bool = True, homotopy: bool = False) -> dict:
    """``sum_j a_j (x) (degree-m part of E(l_j))`` as ``{(j, i_1..i_m): int}``.

    ``homotopy=True`` keeps only entries with pairwise distinct indices (the
    link-homotopy reduction) and only checks non-repeating invariants.
    """
    word = L if isinstance(L, BraidWord) else L.to_word()
    longs = magnus_longitudes(word, m)
    if check:
        for j, poly in longs.items():
            for w, c in poly.terms.items():
                I = w + (j,)
                if 0 < len(w) < m and c and (not homotopy or len(set(I)) == len(I)):
                    raise NotInFiltration(f"mu_{I} = {c} is nonzero below length {m + 1}")
    out = {}
    for j, poly in longs.items():
        for w, c in poly.homogeneous(m).items():
            key = (j,) + w
            if c and (not homotopy or len(set(key)) == len(key)):
                out[key] = c
    return out


def lh_representative(L) -> StringLinkExpr:
    """The product ``b_1 ... b_(l-1)`` of ``B_J`` powers link-homotopic to ``L``.

    ``b_i = prod_{J in I_(i+1)} B_J^(x_J)`` with
    ``x_J = mu_J(L) - mu_J(b_1 ... b_(i-1))``.
    """
    word = L if isinstance(L, BraidWord) else L.to_word()
    word.require_pure()
    l = word.strands
    target = milnor_numbers(word, l) if l >= 2 else {}
    factors = []
    current = BraidWord(l)
    for i in range(1, l):
        block = []
        have = milnor_numbers(current, i + 1) if factors else {}
        for J in index_set(i + 1, l):
            x = target.get(J, 0) - have.get(J, 0)
            if x:
                block.append(StringLinkExpr.power(b_commutator(J, l), x))
        if block:
            b = StringLinkExpr.stack(*block)
            factors.append(b)
            current = current * b.to_word()
    if not factors:
        return StringLinkExpr.leaf(BraidWord(l))
    return StringLinkExpr.stack(*factors)
