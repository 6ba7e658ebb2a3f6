"""Exact rational scalars and power series in hbar truncated at a fixed order.

Every coefficient in the library is an ``HSeries``: a dense tuple of exact
rationals ``c[0] + c[1] h + ... + c[N-1] h^(N-1)`` where ``h`` stands for
hbar and ``N`` is the truncation order.  Mixed-order arithmetic truncates to
the smaller order.

The q-integers use ``q = exp(h)`` throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from gmpy2 import mpq

__all__ = [
    "Rational", "Q", "HSeries", "NotAUnit", "NonNilpotentArgument",
    "DomainError", "series_add", "series_mul", "series_inv", "series_exp",
    "qpow", "qint", "QINT_KINDS",
]

Rational = mpq
ZERO = mpq(0)
ONE = mpq(1)


class NotAUnit(ArithmeticError):
    pass


class NonNilpotentArgument(ArithmeticError):
    pass


class DomainError(ValueError):
    pass


def Q(x) -> mpq:
    """Coerce ``x`` (int, str like ``"3/4"``, Fraction, mpq) to an exact rational."""
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point scalars are not allowed")
    return mpq(x)


class HSeries:
    """Truncated power series in hbar with exact rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs, order: int | None = None):
        c = [Q(x) for x in coeffs]
        if order is None:
            order = len(c)
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        c = c[:order] + [ZERO] * (order - len(c))
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c: tuple) -> "HSeries":
        s = object.__new__(cls)
        s.c = c
        return s

    @classmethod
    def const(cls, x, order: int) -> "HSeries":
        return cls._raw((Q(x),) + (ZERO,) * (order - 1))

    @classmethod
    def zero(cls, order: int) -> "HSeries":
        return cls._raw((ZERO,) * order)

    @classmethod
    def one(cls, order: int) -> "HSeries":
        return cls.const(1, order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "HSeries":
        """``coeff * h^k``; zero when ``k >= order``."""
        c = [ZERO] * order
        if k < order:
            c[k] = Q(coeff)
        return cls._raw(tuple(c))

    @property
    def order(self) -> int:
        return len(self.c)

    @property
    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order`` for the zero series)."""
        for i, x in enumerate(self.c):
            if x:
                return i
        return len(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __getitem__(self, k: int):
        return self.c[k]

    def truncate(self, order: int) -> "HSeries":
        if order >= len(self.c):
            return self
        return HSeries._raw(self.c[:order])

    def extend(self, order: int) -> "HSeries":
        """Pad with zeros up to ``order`` (only valid when the tail is genuinely zero)."""
        if order <= len(self.c):
            return self.truncate(order)
        return HSeries._raw(self.c + (ZERO,) * (order - len(self.c)))

    def shift(self, k: int) -> "HSeries":
        """Multiply by ``h^k``, keeping the order."""
        n = len(self.c)
        if k >= n:
            return HSeries.zero(n)
        return HSeries._raw((ZERO,) * k + self.c[: n - k])

    def select(self, powers) -> "HSeries":
        """Keep only the coefficients whose hbar-power is in ``powers``."""
        return HSeries._raw(tuple(x if i in powers else ZERO for i, x in enumerate(self.c)))

    def __add__(self, other):
        if not isinstance(other, HSeries):
            other = HSeries.const(other, len(self.c))
        a, b = self.c, other.c
        n = min(len(a), len(b))
        return HSeries._raw(tuple(a[i] + b[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return HSeries._raw(tuple(-x for x in self.c))

    def __sub__(self, other):
        if not isinstance(other, HSeries):
            other = HSeries.const(other, len(self.c))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, HSeries):
            k = Q(other)
            return HSeries._raw(tuple(x * k for x in self.c))
        a, b = self.c, other.c
        n = min(len(a), len(b))
        out = [ZERO] * n
        for i in range(n):
            x = a[i]
            if x:
                for j in range(n - i):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return HSeries._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = HSeries.one(len(self.c))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self) -> "HSeries":
        a = self.c
        if not a[0]:
            raise NotAUnit("constant term is zero")
        n = len(a)
        b = [ZERO] * n
        b[0] = 1 / a[0]
        for k in range(1, n):
            acc = ZERO
            for i in range(1, k + 1):
                if a[i]:
                    acc += a[i] * b[k - i]
            b[k] = -acc * b[0]
        return HSeries._raw(tuple(b))

    def __truediv__(self, other):
        if isinstance(other, HSeries):
            return self * other.inv()
        return self * (1 / Q(other))

    def exp(self) -> "HSeries":
        if self.c[0]:
            raise NonNilpotentArgument("exp needs a series with zero constant term")
        n = len(self.c)
        out = HSeries.one(n)
        term = HSeries.one(n)
        for k in range(1, n):
            term = term * self * mpq(1, k)
            out = out + term
        return out

    def __eq__(self, other):
        if isinstance(other, HSeries):
            n = min(len(self.c), len(other.c))
            return self.c[:n] == other.c[:n]
        if isinstance(other, (int, mpq, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        parts = []
        for i, x in enumerate(self.c):
            if not x:
                continue
            coef = str(x)
            parts.append(coef if i == 0 else f"({coef})h^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"HSeries({body}; N={len(self.c)})"

    def to_strings(self) -> list[str]:
        return [str(x) for x in self.c]

    @classmethod
    def from_strings(cls, coeffs) -> "HSeries":
        return cls([Q(x) for x in coeffs])


def series_add(a: HSeries, b: HSeries) -> HSeries:
    return a + b


def series_mul(a: HSeries, b: HSeries) -> HSeries:
    return a * b


def series_inv(a: HSeries) -> HSeries:
    return a.inv()


def series_exp(a: HSeries) -> HSeries:
    return a.exp()


def qpow(x, order: int) -> HSeries:
    """``q^x = exp(x h)`` for a rational exponent ``x``."""
    x = Q(x)
    return HSeries._raw(tuple(x**k / factorial(k) for k in range(order)))


def _brace_over_h(i: int, order: int) -> HSeries:
    # (q^i - 1)/h, exact to `order`
    return HSeries._raw(tuple(mpq(i) ** (k + 1) / factorial(k + 1) for k in range(order)))


def _bracket(i: int, order: int) -> HSeries:
    if i == 0:
        return HSeries.zero(order)
    return _brace_over_h(i, order) * _brace_over_h(1, order).inv()


def _bracket_fact(n: int, order: int) -> HSeries:
    out = HSeries.one(order)
    for k in range(1, n + 1):
        out = out * _bracket(k, order)
    return out


QINT_KINDS = ("brace", "brace-falling", "brace-fact", "bracket", "bracket-fact", "qbinom", "binom")


def qint(kind: str, *args: int, order: int) -> HSeries:
    """q-integer quantities at ``q = exp(h)``.

    ``brace(i) = q^i - 1``, ``brace-falling(i, n) = {i}{i-1}...{i-n+1}``,
    ``brace-fact(n) = {n}_{q,n}``, ``bracket(i) = {i}/{1}``,
    ``bracket-fact(n) = [n][n-1]...[1]``, ``qbinom(i, n) = {i}_{q,n}/{n}!``
    and the ordinary ``binom(i, n)``.
    """
    if kind == "brace":
        (i,) = args
        return qpow(i, order) - 1
    if kind == "brace-falling":
        i, n = args
        if n < 0:
            raise DomainError("n must be >= 0")
        out = HSeries.one(order)
        for t in range(n):
            out = out * (qpow(i - t, order) - 1)
        return out
    if kind == "brace-fact":
        (n,) = args
        if n < 0:
            raise DomainError("n must be >= 0")
        return qint("brace-falling", n, n, order=order)
    if kind == "bracket":
        (i,) = args
        return _bracket(i, order)
    if kind == "bracket-fact":
        (n,) = args
        if n < 0:
            raise DomainError("n must be >= 0")
        return _bracket_fact(n, order)
    if kind == "qbinom":
        i, n = args
        if n < 0:
            raise DomainError("n must be >= 0")
        # {i}_{q,n}/{n}_q! = prod_t [i-t]_q / [n]_q!  (the (q-1)^n factors cancel)
        num = HSeries.one(order)
        for t in range(n):
            num = num * _bracket(i - t, order)
        return num * _bracket_fact(n, order).inv()
    if kind == "binom":
        i, n = args
        if n < 0:
            raise DomainError("n must be >= 0")
        if i >= 0:
            return HSeries.const(comb(i, n), order)
        # generalized binomial for negative upper index
        val = mpq(1)
        for t in range(n):
            val = val * (i - t) / (t + 1)
        return HSeries.const(val, order)
    raise DomainError(f"unknown q-integer kind {kind!r}")
