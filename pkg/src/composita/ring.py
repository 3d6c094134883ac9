"""Exact scalar and coefficient arithmetic.

Two building blocks live here: arbitrary-precision rational numbers (the
scalar field used everywhere) and dense univariate polynomials in the formal
variable ``x`` over those rationals.

The rational type is selected once, at import time.  When gmpy2 is
installed its GMP-backed ``mpq`` type is used; otherwise the pure-Python
``fractions.Fraction`` is a drop-in fallback.  Set the environment variable
``COMPOSITA_RATIONAL_BACKEND`` to ``gmpy2`` or ``fraction`` to force a
choice (``benchmarks/bench_backends.py`` compares the two).  Both types
keep values reduced with a positive denominator and print as ``p/q``
(plain ``p`` when the denominator is 1), which is also the serialization
format used throughout the package.

Polynomials are stored dense with trailing zero coefficients stripped, so
structural equality is value equality.  The zero polynomial is the empty
coefficient sequence.  All values are immutable; every operation returns a
fresh value.
"""

from __future__ import annotations

import math
import os
from typing import Iterable, Sequence, Union

__all__ = [
    "RATIONAL_BACKEND",
    "RationalType",
    "Rational",
    "rat",
    "rat_from_str",
    "rat_to_str",
    "rat_arith",
    "factorial",
    "binom",
    "binom_generalized",
    "XPoly",
    "xpoly_arith",
    "xpoly_eval",
    "xpoly_to_json",
    "xpoly_from_json",
]

_requested = os.environ.get("COMPOSITA_RATIONAL_BACKEND", "auto").strip().lower()
if _requested in ("", "auto"):
    try:
        from gmpy2 import mpq as _make_rat

        RATIONAL_BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - depends on environment
        from fractions import Fraction as _make_rat

        RATIONAL_BACKEND = "fraction"
elif _requested == "gmpy2":
    from gmpy2 import mpq as _make_rat

    RATIONAL_BACKEND = "gmpy2"
elif _requested in ("fraction", "python"):
    from fractions import Fraction as _make_rat

    RATIONAL_BACKEND = "fraction"
else:  # pragma: no cover - configuration error
    raise ImportError(
        "COMPOSITA_RATIONAL_BACKEND must be 'auto', 'gmpy2' or 'fraction', "
        f"not {_requested!r}"
    )

RationalType = type(_make_rat(0))

#: Anything accepted where a rational scalar is expected.
Rational = Union[int, RationalType]

factorial = math.factorial


def rat(a: Rational | str = 0, b: Rational | None = None) -> RationalType:
    """Build a rational from an int, a ``p/q`` string, or a pair ``a, b``."""
    if b is not None:
        return _make_rat(a) / _make_rat(b)
    if isinstance(a, str):
        return rat_from_str(a)
    return _make_rat(a)


def rat_from_str(s: str) -> RationalType:
    """Parse ``p`` or ``p/q`` into an exact rational."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return _make_rat(int(p)) / _make_rat(int(q))
    return _make_rat(int(s))


def rat_to_str(r: Rational) -> str:
    """Render as ``p/q``, or just ``p`` when the denominator is 1."""
    return str(rat(r))


_RAT_OPS = ("add", "sub", "mul", "div")


def rat_arith(a: Rational, b: Rational, op: str) -> RationalType:
    """Exact rational arithmetic; ``op`` is one of add/sub/mul/div."""
    a, b = rat(a), rat(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown rational op {op!r}, expected one of {_RAT_OPS}")


def binom(n: int, k: int) -> int:
    """Ordinary binomial coefficient for integer n >= 0; zero outside 0<=k<=n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom_generalized(alpha, k: int):
    """Generalized binomial coefficient: alpha*(alpha-1)*...*(alpha-k+1) / k!.

    ``alpha`` may be any exact rational, or an :class:`XPoly` (useful for
    binomials whose upper argument is affine in x, such as C(x, k)); the
    result has the same type.  For integer alpha >= k this equals the
    ordinary binomial coefficient.
    """
    if k < 0:
        raise ValueError("binom_generalized requires k >= 0")
    if isinstance(alpha, XPoly):
        acc = XPoly.one()
        for i in range(k):
            acc = acc * (alpha - XPoly.constant(i))
        return acc * rat(1, factorial(k))
    a = rat(alpha)
    acc = rat(1)
    for i in range(k):
        acc *= a - i
    return acc / factorial(k)


def _as_rat_coeffs(coeffs: Iterable) -> tuple:
    cs = [rat(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class XPoly:
    """Dense polynomial in x with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Instances are canonical
    (no trailing zeros), immutable and hashable; ``==`` is value equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _as_rat_coeffs(coeffs))

    def __setattr__(self, name, value):  # pragma: no cover - safety net
        raise AttributeError("XPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "XPoly":
        return cls(())

    @classmethod
    def one(cls) -> "XPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "XPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "XPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> "XPoly":
        """The polynomial c * x**k."""
        if k < 0:
            raise ValueError("monomial power must be >= 0")
        return cls((0,) * k + (c,))

    # -- structure ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> RationalType:
        """The coefficient of x**0 (the value at x = 0)."""
        return self.coeffs[0] if self.coeffs else rat(0)

    def coeff(self, k: int) -> RationalType:
        """Coefficient of x**k (zero beyond the stored degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return rat(0)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "XPoly") -> "XPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return XPoly(out)

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __neg__(self) -> "XPoly":
        return XPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, XPoly):
            if not self.coeffs or not other.coeffs:
                return XPoly.zero()
            out = [rat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return XPoly(out)
        c = rat(other)
        return XPoly(tuple(a * c for a in self.coeffs))

    def __rmul__(self, other) -> "XPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "XPoly":
        if n < 0:
            raise ValueError("XPoly power must be >= 0")
        out = XPoly.one()
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def eval(self, x0) -> RationalType:
        """Exact Horner evaluation at a rational point."""
        x0 = rat(x0)
        acc = rat(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def compose(self, inner: "XPoly") -> "XPoly":
        """Polynomial substitution: self(inner(x)), computed by Horner."""
        acc = XPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + XPoly.constant(c)
        return acc

    # -- comparison / rendering -----------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, XPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("XPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"XPoly[{self}]"

    def __str__(self) -> str:
        """Compact text form with descending powers, e.g. ``4x^2-1``.

        Fractional coefficients are parenthesized, ``(3/4)x^2``, so the
        rendering stays unambiguous.
        """
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = rat_to_str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                if mag == 1:
                    body = var
                elif mag.denominator != 1:
                    body = f"({rat_to_str(mag)}){var}"
                else:
                    body = f"{rat_to_str(mag)}{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text


_XPOLY_OPS = ("add", "sub", "mul")


def xpoly_arith(p: XPoly, q: XPoly, op: str) -> XPoly:
    """Polynomial arithmetic in canonical form; ``op`` is add/sub/mul."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown XPoly op {op!r}, expected one of {_XPOLY_OPS}")


def xpoly_eval(p: XPoly, x0) -> RationalType:
    """Evaluate p at the rational point x0 (exact Horner scheme)."""
    return p.eval(x0)


def xpoly_to_json(p: XPoly) -> list[str]:
    """Serialize as a list of ``p/q`` strings, index = power of x."""
    return [rat_to_str(c) for c in p.coeffs]


def xpoly_from_json(data: Sequence[str]) -> XPoly:
    return XPoly(rat_from_str(s) for s in data)
