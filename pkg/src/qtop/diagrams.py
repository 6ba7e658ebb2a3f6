"""Tree Jacobi diagrams, the sl2 weight system and the Milnor-map dictionary.

A :class:`TreeDiagram` is stored as leaves ``(edge, label)`` and trivalent
nodes given as cyclically ordered triples of edge ids.  Every edge id
occurs exactly twice among leaves and node slots; a chord is one edge with
two leaves.  Nothing is normalized modulo AS or IHX; the weight system and
:func:`eta_iso` are the maps that see those relations.

sl2 tensors are dicts ``{word: Rational}`` where a word is a string over
``"h", "e", "f"``; the trace form is ``<h,h> = 2``, ``<e,f> = <f,e> = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product

import sympy
from gmpy2 import mpq

from .hpoly import DomainError, HSeries
from .links import BraidWord
from .milnor import index_set, milnor_map, milnor_numbers, NotInFiltration
from .tensor import IndexOutOfRange, TensorElement

__all__ = [
    "TreeDiagram", "TreeCombination", "NotInSpan", "tree_TI", "s_map", "varsigma",
    "varsigma_embedded", "weight_w", "weight_W", "eta_iso", "express_in_tree_basis",
    "W_of_milnor", "tree_cable", "bracket", "pairing", "casimir_sl2", "b_tensor",
    "tree_from_string", "tensor_to_S",
]


class NotInSpan(ValueError):
    pass


# -- sl2 ---------------------------------------------------------------------

_BRACKET = {
    ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
    ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
    ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
}
_PAIRING = {("h", "h"): 2, ("e", "f"): 1, ("f", "e"): 1}


def bracket(a: str, b: str) -> dict:
    return dict(_BRACKET.get((a, b), {}))


def pairing(a: str, b: str) -> int:
    return _PAIRING.get((a, b), 0)


def _add(out: dict, key, val):
    v = out.get(key, 0) + val
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def casimir_sl2() -> dict:
    """``c = h h / 2 + f e + e f``."""
    return {"hh": mpq(1, 2), "fe": mpq(1), "ef": mpq(1)}


def b_tensor() -> dict:
    """``b = sum_sigma sign(sigma) sigma(h e f)``."""
    out = {}
    base = "hef"
    for perm in permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        out["".join(base[p] for p in perm)] = mpq((-1) ** inv)
    return out


def s_map(x: dict) -> dict:
    """``s(a) = [a,h]/2 (x) h + [a,f] (x) e + [a,e] (x) f`` applied to a length-1 tensor."""
    out: dict = {}
    for word, c in x.items():
        if len(word) != 1:
            raise DomainError("s acts on tensors of length 1")
        a = word
        for partner, dual, w in (("h", "h", mpq(1, 2)), ("f", "e", 1), ("e", "f", 1)):
            for z, k in bracket(a, partner).items():
                _add(out, z + dual, c * k * w)
    return out


def _apply_last(x: dict, fn) -> dict:
    out: dict = {}
    for word, c in x.items():
        for w2, c2 in fn({word[-1]: 1}).items():
            _add(out, word[:-1] + w2, c * c2)
    return out


def varsigma(m: int) -> dict:
    """``vs_2 = c`` and ``vs_(k+1) = (1^(k-1) (x) s)(vs_k)``."""
    if m < 2:
        raise DomainError("varsigma needs m >= 2")
    out = casimir_sl2()
    for _ in range(m - 2):
        out = _apply_last(out, s_map)
    return out


_LETTER_INDEX = {"f": 0, "h": 1, "e": 2}


def tensor_to_S(x: dict, slots, l: int, order: int = 1) -> TensorElement:
    """Place letter ``k`` of each word in strand ``slots[k]``; repeated strands multiply in S(sl2)."""
    terms: dict = {}
    for word, c in x.items():
        if len(word) != len(slots):
            raise DomainError("one slot per letter required")
        key = [[0, 0, 0] for _ in range(l)]
        for ch, s in zip(word, slots):
            if not 1 <= s <= l:
                raise IndexOutOfRange(f"strand {s} not in 1..{l}")
            key[s - 1][_LETTER_INDEX[ch]] += 1
        key = tuple(tuple(k) for k in key)
        _add(terms, key, mpq(c))
    return TensorElement(l, order, {k: HSeries.const(v, order) for k, v in terms.items()})


def varsigma_embedded(I, l: int, order: int = 1) -> TensorElement:
    """``vs_(m+1)`` with tensorand ``k`` placed in strand ``i_k``."""
    I = tuple(I)
    for i in I:
        if not 1 <= i <= l:
            raise IndexOutOfRange(f"index {i} not in 1..{l}")
    return tensor_to_S(varsigma(len(I)), I, l, order)


# -- trees -------------------------------------------------------------------

@dataclass(frozen=True)
class TreeDiagram:
    """Uni-trivalent tree: ``leaves`` = ((edge, label), ...), ``nodes`` = ((e1, e2, e3), ...)."""

    leaves: tuple
    nodes: tuple = ()

    def __post_init__(self):
        leaves = tuple((int(e), int(c)) for e, c in self.leaves)
        nodes = tuple(tuple(int(x) for x in n) for n in self.nodes)
        object.__setattr__(self, "leaves", leaves)
        object.__setattr__(self, "nodes", nodes)
        count: dict = {}
        for e, _ in leaves:
            count[e] = count.get(e, 0) + 1
        for n in nodes:
            if len(n) != 3:
                raise ValueError("internal vertices are trivalent")
            for e in n:
                count[e] = count.get(e, 0) + 1
        if any(v != 2 for v in count.values()):
            raise ValueError("every edge needs exactly two ends")
        if len(count) != len(leaves) + len(nodes) - 1 or not self._connected():
            raise ValueError("diagram is not a tree")

    def _connected(self) -> bool:
        if not self.nodes:
            return len(self.leaves) == 2
        adj: dict = {}
        for i, n in enumerate(self.nodes):
            for e in n:
                adj.setdefault(e, []).append(i)
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for e in self.nodes[i]:
                for j in adj[e]:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
        return len(seen) == len(self.nodes)

    @property
    def degree(self) -> int:
        return (len(self.leaves) + len(self.nodes)) // 2

    @property
    def labels(self) -> tuple:
        return tuple(c for _, c in self.leaves)

    def relabel(self, fn) -> "TreeDiagram":
        return TreeDiagram(tuple((e, fn(c)) for e, c in self.leaves), self.nodes)

    def flip(self, node: int) -> "TreeDiagram":
        """Reverse the cyclic order at one trivalent vertex."""
        nodes = list(self.nodes)
        a, b, c = nodes[node]
        nodes[node] = (a, c, b)
        return TreeDiagram(self.leaves, tuple(nodes))

    def internal_edges(self) -> list:
        leaf_edges = {e for e, _ in self.leaves}
        return sorted({e for n in self.nodes for e in n} - leaf_edges)

    def ihx(self, edge: int) -> tuple:
        """Three trees whose weights sum to zero (Jacobi at ``edge``)."""
        u, v = [i for i, n in enumerate(self.nodes) if edge in n]
        ru, rv = _rotate_to(self.nodes[u], edge), _rotate_to(self.nodes[v], edge)
        a, b = ru[1], ru[2]
        c, d = rv[1], rv[2]
        out = []
        for (x, y), z in (((a, b), c), ((b, c), a), ((c, a), b)):
            nodes = list(self.nodes)
            nodes[u] = (edge, x, y)
            nodes[v] = (edge, z, d)
            out.append(TreeDiagram(self.leaves, tuple(nodes)))
        return tuple(out)

    def __str__(self):
        if not self.nodes:
            return f"D({self.leaves[0][1]},{self.leaves[1][1]})"
        return f"Tree(leaves={self.leaves}, nodes={self.nodes})"


def _rotate_to(node, e):
    i = node.index(e)
    return node[i:] + node[:i]


def tree_TI(I, l: int) -> TreeDiagram:
    """Comb tree with leaves labeled ``i_1, ..., i_(m+1)`` in order."""
    I = tuple(I)
    if len(I) < 2:
        raise DomainError("T_I needs at least two labels")
    for i in I:
        if not 1 <= i <= l:
            raise IndexOutOfRange(f"label {i} not in 1..{l}")
    n = len(I)
    if n == 2:
        return TreeDiagram(((0, I[0]), (0, I[1])))
    leaf = list(range(n))          # leaf k uses edge k
    inner = [n + k for k in range(n - 3)]  # e_1 .. e_(n-3)
    nodes = []
    if n == 3:
        nodes.append((leaf[0], leaf[1], leaf[2]))
    else:
        nodes.append((leaf[0], leaf[1], inner[0]))
        for k in range(1, n - 3):
            nodes.append((inner[k - 1], leaf[k + 1], inner[k]))
        nodes.append((inner[-1], leaf[n - 2], leaf[n - 1]))
    return TreeDiagram(tuple((leaf[k], I[k]) for k in range(n)), tuple(nodes))


_TREE_TOKEN = re.compile(r"\s*(\d+|\[|\]|,)")


def tree_from_string(text: str, l: int | None = None) -> TreeDiagram:
    """Parse ``"T(1,2,3,...)"`` (comb tree) or a nested bracket such as
    ``"[[1,2],[3,4]]"``.

    A bracket ``[X, Y]`` is a vertex with cyclic order (X, Y, parent); the
    outermost bracket is the edge joining its two sides, so ``[[1,2],3]`` is
    ``T(1,2,3)`` and ``[[[1,2],3],4]`` is ``T(1,2,3,4)``.
    """
    text = text.strip()
    m = re.fullmatch(r"T\((.*)\)", text)
    if m:
        nums = tuple(int(x) for x in m.group(1).split(","))
        return tree_TI(nums, l or max(nums))
    toks, pos = [], 0
    while pos < len(text):
        mt = _TREE_TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"bad tree syntax at position {pos}: {text!r}")
        toks.append(mt.group(1))
        pos = mt.end()
    state = {"i": 0}

    def take(expect=None):
        if state["i"] >= len(toks):
            raise ValueError(f"unexpected end of tree {text!r}")
        tok = toks[state["i"]]
        state["i"] += 1
        if expect is not None and tok != expect:
            raise ValueError(f"expected {expect!r} in tree {text!r}, got {tok!r}")
        return tok

    def parse():
        tok = take()
        if tok == "[":
            a = parse()
            take(",")
            b = parse()
            take("]")
            return (a, b)
        if tok.isdigit():
            return int(tok)
        raise ValueError(f"unexpected {tok!r} in tree {text!r}")

    root = parse()
    if state["i"] != len(toks) or not isinstance(root, tuple):
        raise ValueError(f"a tree is a bracket [X, Y]: {text!r}")
    leaves, nodes = [], []
    counter = iter(range(10 ** 9))

    def build(x):
        e = next(counter)
        if isinstance(x, int):
            leaves.append((e, x))
        else:
            nodes.append((build(x[0]), build(x[1]), e))
        return e

    a, b = build(root[0]), build(root[1])
    # join the two sides along one edge
    leaves = [(a if e == b else e, c) for e, c in leaves]
    nodes = [tuple(a if e == b else e for e in n) for n in nodes]
    labels = [c for _, c in leaves]
    if l is not None:
        for c in labels:
            if not 1 <= c <= l:
                raise IndexOutOfRange(f"label {c} not in 1..{l}")
    return TreeDiagram(tuple(leaves), tuple(nodes))


class TreeCombination:
    """Formal rational combination of trees of one degree."""

    def __init__(self, terms=()):
        self.terms = [(mpq(c), t) for c, t in terms if c]

    @classmethod
    def of(cls, tree: TreeDiagram, c=1):
        return cls([(c, tree)])

    def __add__(self, other):
        return TreeCombination(self.terms + other.terms)

    def scale(self, c):
        return TreeCombination([(c * k, t) for k, t in self.terms])

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)


def _as_combination(T) -> TreeCombination:
    if isinstance(T, TreeCombination):
        return T
    return TreeCombination.of(T)


# -- weight system -----------------------------------------------------------

def _tree_weight_words(T: TreeDiagram) -> dict:
    """Contraction as ``{assignment of letters to leaves (tuple in leaf order): coeff}``."""
    if not T.nodes:
        return {tuple(w): c for w, c in casimir_sl2().items()}
    b = b_tensor()
    leaf_pos = {}
    for k, (e, _) in enumerate(T.leaves):
        leaf_pos[e] = k
    # partial states: (letters on open internal edge ends, letters on leaves) -> coeff
    states = {((), (None,) * len(T.leaves)): mpq(1)}
    for node in T.nodes:
        new = {}
        for (ends, lv), c in states.items():
            for word, cb in b.items():
                ends2 = dict(ends)
                lv2 = list(lv)
                coef = c * cb
                for e, ch in zip(node, word):
                    if e in leaf_pos:
                        lv2[leaf_pos[e]] = ch
                    elif e in ends2:
                        coef *= pairing(ends2.pop(e), ch)
                        if not coef:
                            break
                    else:
                        ends2[e] = ch
                if coef:
                    key = (tuple(sorted(ends2.items())), tuple(lv2))
                    _add(new, key, coef)
        states = new
    out: dict = {}
    for (ends, lv), c in states.items():
        if ends:
            raise ValueError("unpaired internal edge")
        _add(out, lv, c)
    return out


def weight_w(T, l: int, order: int = 1) -> TensorElement:
    """``w_m(T)``: b at every trivalent vertex, trace-form contraction on internal
    edges, leaf letters multiplied into the strand given by the label."""
    total = TensorElement.zero(l, order)
    for c, tree in _as_combination(T):
        words = _tree_weight_words(tree)
        slots = tree.labels
        x = {"".join(w): v for w, v in words.items()}
        total = total + tensor_to_S(x, slots, l, order).scale(c)
    return total


def weight_W(T, l: int, order: int) -> TensorElement:
    """``W(T) = w_m(T) h^m`` at truncation ``order``."""
    comb = _as_combination(T)
    if not len(comb):
        return TensorElement.zero(l, order)
    m = comb.terms[0][1].degree
    return weight_w(comb, l, order).hbar_shift(m)


# -- trees to tensors and back -----------------------------------------------

def _lie_word(T: TreeDiagram, edge: int, from_node) -> dict:
    """Tensor expansion of the Lie word hanging off ``edge`` away from ``from_node``."""
    for i, n in enumerate(T.nodes):
        if i != from_node and edge in n:
            _, x, y = _rotate_to(n, edge)
            wx, wy = _lie_word(T, x, i), _lie_word(T, y, i)
            out: dict = {}
            for a, ca in wx.items():
                for b, cb in wy.items():
                    _add(out, a + b, ca * cb)
                    _add(out, b + a, -ca * cb)
            return out
    label = next(c for e, c in T.leaves if e == edge)
    return {(label,): 1}


def eta_iso(T) -> dict:
    """``sum_v a_(c_v) (x) T_v``: ``{(root label, word...): coeff}``."""
    out: dict = {}
    for c, tree in _as_combination(T):
        if not tree.nodes:
            (_, i), (_, j) = tree.leaves
            _add(out, (i, j), c)
            _add(out, (j, i), c)
            continue
        for e, label in tree.leaves:
            for w, k in _lie_word(tree, e, -1).items():
                _add(out, (label,) + w, c * k)
    return out


def express_in_tree_basis(d: dict, l: int) -> TreeCombination:
    """A combination of comb trees ``T_I`` whose :func:`eta_iso` equals ``d``.

    Solved exactly over Q, one label multiset at a time (eta preserves it);
    free parameters are set to zero.
    """
    d = {tuple(k): mpq(v) for k, v in d.items() if v}
    if not d:
        return TreeCombination()
    sizes = {len(k) for k in d}
    if len(sizes) != 1:
        raise NotInSpan("mixed degrees")
    groups: dict = {}
    for k, v in d.items():
        groups.setdefault(tuple(sorted(k)), {})[k] = v
    result = TreeCombination()
    for multiset, target in sorted(groups.items()):
        seqs = sorted(set(permutations(multiset)))
        cols = [eta_iso(tree_TI(I, l)) for I in seqs]
        rows = sorted(set(target) | {k for col in cols for k in col})
        A = sympy.Matrix(len(rows), len(seqs),
                         lambda i, j: sympy.Rational(str(cols[j].get(rows[i], 0))))
        bvec = sympy.Matrix(len(rows), 1, lambda i, _: sympy.Rational(str(target.get(rows[i], 0))))
        try:
            sol, params = A.gauss_jordan_solve(bvec)
        except ValueError as exc:
            raise NotInSpan(f"tensor over labels {multiset} is not a combination of trees") from exc
        sol = sol.subs({p: 0 for p in params})
        for I, val in zip(seqs, sol):
            if val != 0:
                result = result + TreeCombination.of(tree_TI(I, l), mpq(str(val)))
    return result


def tree_cable(T, p: int) -> TreeCombination:
    """Sum over all ways of replacing each label ``i`` by one of ``(i-1)p+1 .. ip``."""
    out = []
    for c, tree in _as_combination(T):
        choices = [range((lab - 1) * p + 1, lab * p + 1) for lab in tree.labels]
        for pick in product(*choices):
            leaves = tuple((e, q) for (e, _), q in zip(tree.leaves, pick))
            out.append((c, TreeDiagram(leaves, tree.nodes)))
    return TreeCombination(out)


# -- W o mu ------------------------------------------------------------------

def W_of_milnor(L, m: int, order: int | None = None, path: str = "general",
                homotopy: bool = False) -> TensorElement:
    """``(W o mu_m)(L)`` at truncation ``order`` (default ``m + 1``).

    ``general``: Milnor map -> comb-tree combination -> weight system.  With
    ``homotopy=True`` the Milnor map is first reduced to its non-repeating
    part (so only non-repeating invariants of length ``<= m`` must vanish).
    ``shortcut``: ``sum_{I in I_(m+1)} mu_I(L) vs_I h^m`` (needs vanishing
    non-repeating invariants of length <= m; always the homotopy reduction).
    """
    word = L if isinstance(L, BraidWord) else L.to_word()
    l = word.strands
    order = m + 1 if order is None else order
    if path == "general":
        mm = milnor_map(word, m, homotopy=homotopy)
        return weight_W(express_in_tree_basis(mm, l), l, order)
    if path != "shortcut":
        raise ValueError(f"unknown path {path!r}")
    mus = milnor_numbers(word, m + 1)
    for I, v in mus.items():
        if len(I) <= m and len(set(I)) == len(I):
            raise NotInFiltration(f"mu_{I} = {v} is nonzero below length {m + 1}")
    total = TensorElement.zero(l, order)
    if m + 1 > l:
        return total
    for I in index_set(m + 1, l):
        v = mus.get(I, 0)
        if v:
            total = total + varsigma_embedded(I, l, order).scale(v)
    return total.hbar_shift(m)
