"""String links as pure-braid words, expression trees and tangle diagrams,
and their universal sl2 invariant ``J`` in U_h(sl2)^(x l) mod h^N.

Conventions
-----------
A braid word is read left to right from the bottom up; ``L1 * L2`` puts
``L2`` on top and ``J(L1 * L2) = J(L1) J(L2)``.  Strands are oriented
downwards and the labels of a component are multiplied in the order met
when walking against the orientation, i.e. from the bottom endpoint up.

Crossings.  In ``s_p`` the strand entering at the lower right of the slice
(the one running top-left to bottom-right) passes over.  A positive crossing
carries ``R = sum a_n (x) b_n``, a negative one ``R^-1``; in both cases the
``a`` leg sits on the over-strand and the ``b`` leg on the under-strand.
With these choices ``J(s_1^2) = sum b_m a_n (x) a_m b_n``.

Tangle diagrams may also turn strands around with caps and cups.  A leg on
an upward strand is hit by the antipode, a maximum traversed left to right
carries ``K``, a minimum traversed left to right ``K^-1``, and the
remaining extrema carry nothing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .pbw import ONE_MONO, k_poly
from .tensor import (
    IndexOutOfRange, StrandMismatch, TensorElement, contract_slots, degree, embed,
    outer, tensor_mul,
)
from .uqsl2 import antipode_at, r_matrix

__all__ = [
    "BraidWord", "StringLinkExpr", "TangleDiagram", "NotPure", "DegenerateIndex",
    "MalformedDiagram", "ParseError", "a_generator", "b_commutator", "invariant",
    "evaluate_diagram", "stack", "cable", "linking_matrix", "parse_word", "kink",
]


class NotPure(ValueError):
    pass


class DegenerateIndex(ValueError):
    pass


class MalformedDiagram(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, position=None):
        super().__init__(msg if position is None else f"{msg} (at position {position})")
        self.position = position


# -- braid words -------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    """Artin word on ``strands`` strands; letters are ``(p, sign)`` for ``s_p^sign``."""

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(p), int(e)) for p, e in self.letters)
        for p, e in letters:
            if not 1 <= p < self.strands:
                raise IndexOutOfRange(f"generator s_{p} needs 1 <= p < {self.strands}")
            if e not in (1, -1):
                raise ValueError("letters carry sign +1 or -1")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise StrandMismatch(f"{self.strands} vs {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((p, -e) for p, e in reversed(self.letters)))

    def free_reduce(self) -> "BraidWord":
        out = []
        for p, e in self.letters:
            if out and out[-1] == (p, -e):
                out.pop()
            else:
                out.append((p, e))
        return BraidWord(self.strands, tuple(out))

    def permutation(self) -> tuple:
        """``perm[pos]`` = strand (by bottom position, 0-based) found at top position ``pos``."""
        perm = list(range(self.strands))
        for p, _ in self.letters:
            perm[p - 1], perm[p] = perm[p], perm[p - 1]
        return tuple(perm)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(self.strands))

    def require_pure(self):
        if not self.is_pure():
            raise NotPure(f"braid word with permutation {self.permutation()} is not pure")

    def crossings(self):
        """Yield ``(a, b, sign)`` per letter: components (1-based) at the lower left and lower right."""
        perm = list(range(1, self.strands + 1))
        for p, e in self.letters:
            a, b = perm[p - 1], perm[p]
            yield a, b, e
            perm[p - 1], perm[p] = b, a

    def to_expr(self) -> "StringLinkExpr":
        return StringLinkExpr.leaf(self)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"s{p}" if e == 1 else f"s{p}^-1" for p, e in self.letters)


def a_generator(i: int, j: int, l: int) -> BraidWord:
    """``A_{i,j} = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1`` (symmetric in i, j)."""
    if i == j:
        raise DegenerateIndex("A_{i,i} is not defined")
    i, j = min(i, j), max(i, j)
    if i < 1 or j > l:
        raise IndexOutOfRange(f"indices {i},{j} not in 1..{l}")
    conj = [(k, 1) for k in range(j - 1, i, -1)]
    letters = conj + [(i, 1), (i, 1)] + [(p, -1) for p, _ in reversed(conj)]
    return BraidWord(l, tuple(letters))


def linking_matrix(L) -> list:
    """Linking numbers off the diagonal, framings on it (integers)."""
    if isinstance(L, TangleDiagram):
        return L.linking_matrix()
    word = _as_word(L)
    word.require_pure()
    l = word.strands
    twice = [[0] * l for _ in range(l)]
    for a, b, e in word.crossings():
        twice[a - 1][b - 1] += e
        twice[b - 1][a - 1] += e
    return [[Fraction(x, 2) if x % 2 else x // 2 for x in row] for row in twice]


# -- expression trees --------------------------------------------------------

@dataclass(frozen=True)
class StringLinkExpr:
    """Expression over braid words: ``leaf``, ``stack``, ``comm``, ``pow``, ``cable``.

    ``comm(x, y)`` stands for ``x y x^-1 y^-1``.
    """

    kind: str
    args: tuple = field(default=())
    strands: int = 0

    @classmethod
    def leaf(cls, w: BraidWord):
        return cls("leaf", (w,), w.strands)

    @classmethod
    def stack(cls, *parts):
        parts = tuple(_as_expr(p) for p in parts)
        if not parts:
            raise ValueError("empty stack")
        l = parts[0].strands
        for p in parts:
            if p.strands != l:
                raise StrandMismatch(f"{p.strands} vs {l} strands")
        return cls("stack", parts, l)

    @classmethod
    def comm(cls, x, y):
        x, y = _as_expr(x), _as_expr(y)
        if x.strands != y.strands:
            raise StrandMismatch(f"{x.strands} vs {y.strands} strands")
        return cls("comm", (x, y), x.strands)

    @classmethod
    def power(cls, x, k: int):
        x = _as_expr(x)
        return cls("pow", (x, int(k)), x.strands)

    @classmethod
    def cabled(cls, x, p: int):
        x = _as_expr(x)
        return cls("cable", (x, int(p)), x.strands * int(p))

    def to_word(self) -> BraidWord:
        k = self.kind
        if k == "leaf":
            return self.args[0]
        if k == "stack":
            out = BraidWord(self.strands)
            for p in self.args:
                out = out * p.to_word()
            return out
        if k == "comm":
            x, y = (a.to_word() for a in self.args)
            return x * y * x.inverse() * y.inverse()
        if k == "pow":
            return self.args[0].to_word() ** self.args[1]
        return cable(self.args[0].to_word(), self.args[1])

    def inverse(self) -> "StringLinkExpr":
        k = self.kind
        if k == "leaf":
            return StringLinkExpr.leaf(self.args[0].inverse())
        if k == "stack":
            return StringLinkExpr.stack(*(p.inverse() for p in reversed(self.args)))
        if k == "comm":
            x, y = self.args
            return StringLinkExpr.comm(y, x)
        if k == "pow":
            return StringLinkExpr.power(self.args[0], -self.args[1])
        return StringLinkExpr.cabled(self.args[0].inverse(), self.args[1])

    def leaves_pure(self) -> bool:
        if self.kind == "leaf":
            return self.args[0].is_pure()
        if self.kind == "cable":
            return self.to_word().is_pure()
        return all(a.leaves_pure() for a in self.args if isinstance(a, StringLinkExpr))

    def __mul__(self, other):
        return stack(self, other)

    def __str__(self):
        k = self.kind
        if k == "leaf":
            return str(self.args[0])
        if k == "stack":
            return " ".join(f"({a})" for a in self.args)
        if k == "comm":
            return f"[{self.args[0]},{self.args[1]}]"
        if k == "pow":
            return f"({self.args[0]})^{self.args[1]}"
        return f"cable({self.args[0]},{self.args[1]})"


def _as_expr(x) -> StringLinkExpr:
    if isinstance(x, StringLinkExpr):
        return x
    if isinstance(x, BraidWord):
        return StringLinkExpr.leaf(x)
    raise TypeError(f"cannot use {type(x).__name__} as a string link")


def _as_word(x) -> BraidWord:
    if isinstance(x, BraidWord):
        return x
    if isinstance(x, StringLinkExpr):
        return x.to_word()
    raise TypeError(f"cannot use {type(x).__name__} as a braid word")


def b_commutator(J, l: int) -> StringLinkExpr:
    """``B_J = [[...[A_{j1,j2}, A_{j2,j3}], ...], A_{j(m-1),jm}]``."""
    J = tuple(J)
    if len(J) < 2:
        raise ValueError("B_J needs at least two indices")
    for j in J:
        if not 1 <= j <= l:
            raise IndexOutOfRange(f"index {j} not in 1..{l}")
    expr = StringLinkExpr.leaf(a_generator(J[0], J[1], l))
    for k in range(1, len(J) - 1):
        expr = StringLinkExpr.comm(expr, a_generator(J[k], J[k + 1], l))
    return expr


def stack(L1, L2) -> StringLinkExpr:
    """``L1 . L2`` with ``L2`` on top."""
    return StringLinkExpr.stack(L1, L2)


def cable(L, p: int) -> BraidWord:
    """Replace every strand by ``p`` parallel copies.

    Block ``k`` consists of strands ``(k-1)p+1 .. kp``; ``s_k`` becomes the
    ``p^2``-crossing braid moving block ``k`` across block ``k+1``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    L = _as_word(L)
    out = []
    for k, e in L.letters:
        a = (k - 1) * p
        block = [(a + i + t, 1) for i in range(p, 0, -1) for t in range(p)]
        if e == -1:
            block = [(q, -1) for q, _ in reversed(block)]
        out.extend(block)
    return BraidWord(L.strands * p, tuple(out))


# -- evaluation of J ---------------------------------------------------------

def _word_invariant(word: BraidWord, order: int) -> TensorElement:
    word.require_pure()
    l = word.strands
    acc = TensorElement.one(l, order)
    rp, rm = r_matrix(1, order), r_matrix(-1, order)
    for a, b, e in word.crossings():
        # the lower-right strand b runs over in s_p, the lower-left strand a in s_p^-1
        label = embed(rp, (b, a), l) if e == 1 else embed(rm, (a, b), l)
        acc = tensor_mul(acc, label)
    return acc


def invariant(L, order: int, path: str = "algebraic") -> TensorElement:
    """``J(L)`` mod h^order.

    ``path="word"`` flattens ``L`` to one braid word and folds crossings
    bottom to top; ``path="algebraic"`` evaluates stacks, commutators and
    powers of an expression as products of the parts' invariants.
    """
    if path not in ("algebraic", "word"):
        raise ValueError(f"unknown path {path!r}")
    if isinstance(L, TangleDiagram):
        J = evaluate_diagram(L, order)
    elif isinstance(L, BraidWord):
        J = _word_invariant(L, order)
    elif path == "word" or not L.leaves_pure():
        J = _word_invariant(L.to_word(), order)
    else:
        J = _expr_invariant(L, order)
    _assert_degree_bound(J)
    return J


def _assert_degree_bound(J: TensorElement) -> None:
    # every label term carries h^j with at most 2j generators (R: F^n(x)E^n
    # with (q-1)^n, D and K: H^d with h^d), and reordering never raises degree
    for key, v in J.terms.items():
        d = degree(key)
        for j in range(v.order):
            if v[j] and d > 2 * j:
                raise AssertionError(f"degree {d} at h^{j} in J: bound 2j violated at {key}")


def _expr_invariant(e: StringLinkExpr, order: int) -> TensorElement:
    k = e.kind
    if k == "leaf":
        return _word_invariant(e.args[0], order)
    if k == "cable":
        return _word_invariant(e.to_word(), order)
    if k == "stack":
        acc = TensorElement.one(e.strands, order)
        for p in e.args:
            acc = tensor_mul(acc, _expr_invariant(p, order))
        return acc
    if k == "comm":
        x, y = e.args
        jx, jy = _expr_invariant(x, order), _expr_invariant(y, order)
        jxi, jyi = _expr_invariant(x.inverse(), order), _expr_invariant(y.inverse(), order)
        return tensor_mul(tensor_mul(jx, jy), tensor_mul(jxi, jyi))
    x, n = e.args
    base = _expr_invariant(x if n >= 0 else x.inverse(), order)
    acc = TensorElement.one(e.strands, order)
    for _ in range(abs(n)):
        acc = tensor_mul(acc, base)
    return acc


# -- tangle diagrams ---------------------------------------------------------

_SLICE_KINDS = ("identity", "crossing", "cap", "cup")


@dataclass(frozen=True)
class TangleDiagram:
    """A string link drawn as a stack of elementary slices, listed bottom to top.

    Slices are tuples ``("identity",)``, ``("crossing", p, sign)``,
    ``("cap", p)`` (a maximum joining positions p, p+1 of the level below)
    and ``("cup", p)`` (a minimum creating positions p, p+1 of the level
    above).  ``crossing`` uses the braid picture: with sign +1 the strand
    from the upper left to the lower right passes over.  A component starts
    at top position i and ends at bottom position i.
    """

    strands: int
    slices: tuple = ()

    def __post_init__(self):
        norm = []
        for s in self.slices:
            if isinstance(s, dict):
                s = (s["type"],) + tuple(s[k] for k in ("p", "sign") if k in s)
            s = tuple(s)
            if not s or s[0] not in _SLICE_KINDS:
                raise MalformedDiagram(f"unknown slice {s!r}")
            kind = s[0]
            if kind == "identity":
                s = ("identity",)
            elif kind == "crossing":
                if len(s) != 3 or s[2] not in (1, -1):
                    raise MalformedDiagram(f"crossing needs (p, sign=+-1): {s!r}")
                s = ("crossing", int(s[1]), int(s[2]))
            else:
                if len(s) not in (2, 3):
                    raise MalformedDiagram(f"{kind} needs a position: {s!r}")
                s = (kind, int(s[1]))
            norm.append(s)
        object.__setattr__(self, "slices", tuple(norm))
        self.widths()

    @classmethod
    def from_braid(cls, word: BraidWord) -> "TangleDiagram":
        return cls(word.strands, tuple(("crossing", p, e) for p, e in word.letters))

    @classmethod
    def from_json(cls, text_or_obj) -> "TangleDiagram":
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        if isinstance(obj, list):
            return cls(_guess_strands(obj), tuple(obj))
        return cls(int(obj["strands"]), tuple(obj["slices"]))

    def to_json(self) -> str:
        out = []
        for s in self.slices:
            d = {"type": s[0]}
            if len(s) > 1:
                d["p"] = s[1]
            if len(s) > 2:
                d["sign"] = s[2]
            out.append(d)
        return json.dumps({"strands": self.strands, "slices": out})

    def widths(self) -> list:
        w = [self.strands]
        for s in self.slices:
            cur = w[-1]
            kind = s[0]
            if kind == "crossing":
                if not 1 <= s[1] < cur:
                    raise MalformedDiagram(f"crossing at {s[1]} in width {cur}")
                w.append(cur)
            elif kind == "cap":
                if not 1 <= s[1] < cur:
                    raise MalformedDiagram(f"cap at {s[1]} in width {cur}")
                w.append(cur - 2)
            elif kind == "cup":
                if not 1 <= s[1] <= cur + 1:
                    raise MalformedDiagram(f"cup at {s[1]} in width {cur}")
                w.append(cur + 2)
            else:
                w.append(cur)
        if w[-1] != self.strands:
            raise MalformedDiagram(f"top width {w[-1]} differs from bottom width {self.strands}")
        return w

    def trace(self) -> list:
        """Per component, the events met along the orientation (top to bottom endpoint).

        Events are ``("x", slice, role, down)`` for crossings, with role
        ``"bs"`` for the strand running upper left to lower right and ``"fs"``
        for the other one, and ``("max"|"min", slice, left_to_right)``.
        """
        w = self.widths()
        k = len(self.slices)
        seen = set()
        comps = []
        for start in range(1, self.strands + 1):
            level, pos, down = k, start, True
            events = []
            steps = 0
            while True:
                steps += 1
                if steps > 4 * (k + 1) * (max(w) + 1):
                    raise MalformedDiagram("component does not terminate")
                if down:
                    if level == 0:
                        break
                    t = level  # slice t connects level t-1 (below) to t (above)
                    s = self.slices[t - 1]
                    kind = s[0]
                    if kind == "cup" and pos in (s[1], s[1] + 1):
                        other = s[1] + 1 if pos == s[1] else s[1]
                        events.append(("min", t, other > pos))
                        pos, down = other, False
                        continue
                    if kind == "crossing" and pos in (s[1], s[1] + 1):
                        role = "bs" if pos == s[1] else "fs"
                        if (t, role) in seen:
                            raise MalformedDiagram("strand visited twice")
                        seen.add((t, role))
                        events.append(("x", t, role, True))
                        pos = s[1] + 1 if pos == s[1] else s[1]
                    elif kind == "cap":
                        pos = pos if pos < s[1] else pos + 2
                    elif kind == "cup":
                        pos = pos if pos < s[1] else pos - 2
                    level -= 1
                else:
                    if level == k:
                        raise MalformedDiagram(f"component {start} leaves through the top")
                    t = level + 1
                    s = self.slices[t - 1]
                    kind = s[0]
                    if kind == "cap" and pos in (s[1], s[1] + 1):
                        other = s[1] + 1 if pos == s[1] else s[1]
                        events.append(("max", t, other > pos))
                        pos, down = other, True
                        continue
                    if kind == "crossing" and pos in (s[1], s[1] + 1):
                        role = "fs" if pos == s[1] else "bs"
                        if (t, role) in seen:
                            raise MalformedDiagram("strand visited twice")
                        seen.add((t, role))
                        events.append(("x", t, role, False))
                        pos = s[1] + 1 if pos == s[1] else s[1]
                    elif kind == "cap":
                        pos = pos if pos < s[1] else pos - 2
                    elif kind == "cup":
                        pos = pos if pos < s[1] else pos + 2
                    level += 1
            if pos != start:
                raise MalformedDiagram(f"component starting at top {start} ends at bottom {pos}")
            comps.append(events)
        ncross = sum(1 for s in self.slices if s[0] == "crossing")
        if len(seen) != 2 * ncross:
            raise MalformedDiagram("diagram has closed components")
        return comps

    def _crossing_table(self):
        """``slice -> {role: (component, index along orientation, down)}``."""
        table: dict = {}
        for c, events in enumerate(self.trace(), start=1):
            for idx, ev in enumerate(events):
                if ev[0] == "x":
                    table.setdefault(ev[1], {})[ev[2]] = (c, idx, ev[3])
        return table

    def crossing_signs(self):
        """Yield ``(over_component, under_component, oriented sign)`` per crossing."""
        table = self._crossing_table()
        for t, s in enumerate(self.slices, start=1):
            if s[0] != "crossing":
                continue
            over = "bs" if s[2] == 1 else "fs"
            under = "fs" if over == "bs" else "bs"
            (co, _, do), (cu, _, du) = table[t][over], table[t][under]
            sign = s[2] * (1 if do else -1) * (1 if du else -1)
            yield co, cu, sign

    def linking_matrix(self) -> list:
        l = self.strands
        twice = [[0] * l for _ in range(l)]
        for a, b, e in self.crossing_signs():
            if a == b:
                twice[a - 1][a - 1] += 2 * e
            else:
                twice[a - 1][b - 1] += e
                twice[b - 1][a - 1] += e
        return [[Fraction(x, 2) if x % 2 else x // 2 for x in row] for row in twice]

    def rotation_counts(self) -> list:
        """Per component ``(l, r, M, m)``: left/right-connected self-crossings and
        extrema traversed left to right.  Only meaningful when all crossings point down."""
        out = []
        for c, events in enumerate(self.trace(), start=1):
            first_role = {}
            lc = rc = 0
            for ev in events:
                if ev[0] != "x":
                    continue
                t = ev[1]
                if t in first_role:
                    # the loop leaves the first pass at its lower end
                    if first_role[t] == "fs":
                        lc += 1
                    else:
                        rc += 1
                else:
                    first_role[t] = ev[2]
            M = sum(1 for ev in events if ev[0] == "max" and ev[2])
            m = sum(1 for ev in events if ev[0] == "min" and ev[2])
            out.append((lc, rc, M, m))
        return out

    def validate_rotation(self) -> None:
        """Check ``l - r - M + m = 0`` per component (all crossings pointing down)."""
        for events in self.trace():
            for ev in events:
                if ev[0] == "x" and not ev[3]:
                    raise MalformedDiagram("rotation count needs downward crossings")
        for c, (lc, rc, M, m) in enumerate(self.rotation_counts(), start=1):
            if lc - rc - M + m != 0:
                raise MalformedDiagram(f"component {c}: l - r - M + m = {lc - rc - M + m}")


def kink(framing: int, side: str = "right") -> TangleDiagram:
    """One strand with ``|framing|`` curls of sign ``framing``, all on ``side``."""
    if side not in ("right", "left"):
        raise ValueError("side is 'right' or 'left'")
    sign = 1 if framing > 0 else -1
    if side == "right":
        curl = (("cup", 2), ("crossing", 1, sign), ("cap", 2))
    else:
        curl = (("cup", 1), ("crossing", 2, sign), ("cap", 1))
    return TangleDiagram(1, curl * abs(framing))


def _guess_strands(slices) -> int:
    raise MalformedDiagram("a bare slice list needs a strand count; use {'strands': l, 'slices': [...]}")


def _k_label(a: int, order: int) -> TensorElement:
    return TensorElement(1, order, {((0, d, 0),): c for d, c in k_poly(a, order).items()})


def evaluate_diagram(T: TangleDiagram, order: int) -> TensorElement:
    """``J`` of a tangle diagram.

    Labels are attached slice by slice from the bottom.  The working element
    has one tensorand per run of consecutive (along a component) labels
    already seen; adjacent runs are multiplied together as soon as both exist.
    """
    comps = T.trace()
    # reading position: labels are multiplied against the orientation
    where: dict = {}
    for c, events in enumerate(comps, start=1):
        labelled = [ev for ev in events if ev[0] == "x" or ev[2]]
        n = len(labelled)
        for ev in events:
            key = (ev[1], ev[2]) if ev[0] == "x" else (ev[1], ev[0])
            idx = n - 1 - labelled.index(ev) if ev in labelled else None
            where[key] = (c, idx, ev)
    rp, rm = r_matrix(1, order), r_matrix(-1, order)
    acc = TensorElement.one(0, order)
    segs: list = []  # (component, lo, hi) per tensorand of acc
    for t, s in enumerate(T.slices, start=1):
        kind = s[0]
        if kind == "crossing":
            over = "bs" if s[2] == 1 else "fs"
            under = "fs" if over == "bs" else "bs"
            label = rp if s[2] == 1 else rm
            places = [where[(t, over)], where[(t, under)]]
            for slot, (_, _, ev) in enumerate(places):
                if not ev[3]:
                    label = antipode_at(label, slot)
        elif kind in ("cap", "cup"):
            ev_kind = "max" if kind == "cap" else "min"
            c, idx, ev = where[(t, ev_kind)]
            if not ev[2]:
                continue
            label = _k_label(1 if kind == "cap" else -1, order)
            places = [(c, idx, ev)]
        else:
            continue
        acc = outer(acc, label)
        segs.extend((c, idx, idx) for c, idx, _ in places)
        acc, segs = _merge_runs(acc, segs)
    l = T.strands
    out = TensorElement.one(l, order)
    perm_src = {seg[0]: i for i, seg in enumerate(segs)}
    for c, events in enumerate(comps, start=1):
        labelled = sum(1 for ev in events if ev[0] == "x" or ev[2])
        if labelled and c not in perm_src:
            raise MalformedDiagram("unmerged labels")
    if len(perm_src) != len(segs):
        raise MalformedDiagram("unmerged labels")
    # place runs into component slots; components without labels get 1
    result: dict = {}
    for k, v in acc.terms.items():
        key = [ONE_MONO] * l
        for i, seg in enumerate(segs):
            key[seg[0] - 1] = k[i]
        result[tuple(key)] = v
    out = TensorElement(l, acc.order, result)
    return out


def _merge_runs(acc: TensorElement, segs: list):
    changed = True
    while changed:
        changed = False
        for i, (c1, lo1, hi1) in enumerate(segs):
            for j, (c2, lo2, hi2) in enumerate(segs):
                if i != j and c1 == c2 and hi1 + 1 == lo2:
                    acc = contract_slots(acc, i, j)
                    segs = list(segs)
                    segs[i] = (c1, lo1, hi2)
                    del segs[j]
                    changed = True
                    break
            if changed:
                break
    return acc, segs


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(s\d+|A\(\s*\d+\s*,\s*\d+\s*\)|B\[\s*\d+(?:\s*,\s*\d+)+\s*\]|\[|\]|\(|\)|,|\^\s*-?\d+)")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input {text[pos:pos + 10]!r}", pos)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def parse_word(text: str, strands: int | None = None) -> StringLinkExpr:
    """Parse the braid grammar into a :class:`StringLinkExpr`.

    ``word := term+``; ``term := sINT[^INT] | A(INT,INT)[^INT] |
    B[INT(,INT)+][^INT] | [word,word][^INT] | (word)[^INT]``.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty braid word", 0)
    if strands is None:
        strands = _infer_strands(toks)
    state = {"i": 0}

    def peek():
        return toks[state["i"]] if state["i"] < len(toks) else (None, len(text))

    def take():
        tok = peek()
        state["i"] += 1
        return tok

    def power(e):
        tok, _ = peek()
        if tok is not None and tok.startswith("^"):
            take()
            k = int(tok[1:].strip())
            if k == 1:
                return e
            return StringLinkExpr.power(e, k)
        return e

    def parse_seq(stop):
        parts = []
        while True:
            tok, pos = peek()
            if tok is None or tok in stop:
                break
            parts.append(parse_term())
        if not parts:
            tok, pos = peek()
            raise ParseError("expected a braid term", pos)
        return parts[0] if len(parts) == 1 else StringLinkExpr.stack(*parts)

    def parse_term():
        tok, pos = take()
        try:
            if tok.startswith("s"):
                p = int(tok[1:])
                if not 1 <= p < strands:
                    raise ParseError(f"s{p} needs 1 <= p < {strands}", pos)
                tok2, _ = peek()
                if tok2 is not None and tok2.startswith("^"):
                    take()
                    k = int(tok2[1:].strip())
                    w = BraidWord(strands, ((p, 1 if k > 0 else -1),) * abs(k))
                    return StringLinkExpr.leaf(w)
                return StringLinkExpr.leaf(BraidWord(strands, ((p, 1),)))
            if tok.startswith("A("):
                i, j = (int(x) for x in re.findall(r"\d+", tok))
                return power(StringLinkExpr.leaf(a_generator(i, j, strands)))
            if tok.startswith("B["):
                J = tuple(int(x) for x in re.findall(r"\d+", tok))
                return power(b_commutator(J, strands))
        except (IndexOutOfRange, DegenerateIndex, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), pos) from exc
        if tok == "[":
            x = parse_seq({","})
            t2, p2 = take()
            if t2 != ",":
                raise ParseError("expected ',' in commutator", p2)
            y = parse_seq({"]"})
            t3, p3 = take()
            if t3 != "]":
                raise ParseError("expected ']'", p3)
            return power(StringLinkExpr.comm(x, y))
        if tok == "(":
            x = parse_seq({")"})
            t2, p2 = take()
            if t2 != ")":
                raise ParseError("expected ')'", p2)
            return power(x)
        raise ParseError(f"unexpected token {tok!r}", pos)

    expr = parse_seq(set())
    if state["i"] != len(toks):
        tok, pos = peek()
        raise ParseError(f"unexpected token {tok!r}", pos)
    return expr


def _infer_strands(toks) -> int:
    best = 1
    for tok, _ in toks:
        nums = [int(x) for x in re.findall(r"\d+", tok)] if not tok.startswith("^") else []
        if tok.startswith("s"):
            best = max(best, nums[0] + 1)
        elif tok.startswith(("A(", "B[")):
            best = max(best, max(nums))
    return best
