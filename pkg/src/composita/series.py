"""Truncated formal power series in t with polynomial coefficients.

A :class:`Series` stores exact coefficients for ``t^0 .. t^order``.  Each
coefficient is an :class:`~composita.ring.XPoly`, so series over plain
rationals and series whose coefficients carry the symbol ``x`` flow through
the same operations.  Everything is exact; nothing here ever rounds.

The functional operations cover what a generating function catalog needs:
Cauchy product, reciprocal of a unit series, exp and log, rational powers
via ``exp(alpha*log(f))``, composition, and division by ``t^m``.  Unit-ness
always means "nonzero *rational* constant term": inverting a constant term
that still contains x would leave the coefficient ring, so those cases
raise :class:`DomainError` instead.

All operations return fresh values; instances are immutable and safe to
share between threads.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .ring import XPoly, rat, xpoly_from_json, xpoly_to_json

__all__ = [
    "DomainError",
    "Series",
    "series_add",
    "series_sub",
    "series_mul",
    "series_reciprocal",
    "series_exp",
    "series_log",
    "series_pow_rat",
    "series_compose",
    "series_div_t_pow",
    "series_to_json",
    "series_from_json",
]


class DomainError(ValueError):
    """An operation was applied to a series outside its domain."""


def _as_xpoly(v) -> XPoly:
    if isinstance(v, XPoly):
        return v
    return XPoly.constant(rat(v))


class Series:
    """Exact power series in t, truncated after ``t^order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = [_as_xpoly(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError(f"got {len(cs)} coefficients for order {order}")
        cs.extend(XPoly.zero() for _ in range(order + 1 - len(cs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - safety net
        raise AttributeError("Series is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls(order, (XPoly.one(),))

    @classmethod
    def t(cls, order: int) -> "Series":
        return cls.from_poly(order, (XPoly.zero(), XPoly.one()))

    @classmethod
    def from_poly(cls, order: int, coeffs: Iterable) -> "Series":
        """Series with the given leading coefficients, truncated to order."""
        return cls(order, list(coeffs)[: order + 1])

    # -- access ----------------------------------------------------------

    def __getitem__(self, n: int) -> XPoly:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient index {n} outside 0..{self.order}")
        return self.coeffs[n]

    def constant_term(self) -> XPoly:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if not c.is_zero():
                return n
        return None

    def truncate(self, order: int) -> "Series":
        """Re-truncate to a lower (or equal) order."""
        if order > self.order:
            raise ValueError("cannot truncate to a higher order")
        return Series(order, self.coeffs[: order + 1])

    # -- arithmetic -------------------------------------------------------

    def _check_order(self, other: "Series") -> None:
        if self.order != other.order:
            raise ValueError(
                f"series order mismatch: {self.order} vs {other.order}; "
                "truncate explicitly first"
            )

    def __add__(self, other: "Series") -> "Series":
        self._check_order(other)
        return Series(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Series") -> "Series":
        self._check_order(other)
        return Series(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Series":
        return Series(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "Series") -> "Series":
        return series_mul(self, other)

    def scale(self, c) -> "Series":
        """Coefficient-wise multiplication by a rational or XPoly scalar."""
        c = _as_xpoly(c)
        return Series(self.order, tuple(a * c for a in self.coeffs))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(("Series", self.order, self.coeffs))

    def __repr__(self) -> str:
        inside = ", ".join(str(c) for c in self.coeffs)
        return f"Series({self.order}; [{inside}])"


def series_add(f: Series, g: Series) -> Series:
    return f + g


def series_sub(f: Series, g: Series) -> Series:
    return f - g


def series_mul(f: Series, g: Series) -> Series:
    """Cauchy product, truncated at the common order."""
    f._check_order(g)
    n_max = f.order
    out = []
    for n in range(n_max + 1):
        acc = XPoly.zero()
        for i in range(n + 1):
            a = f.coeffs[i]
            if a.is_zero():
                continue
            b = g.coeffs[n - i]
            if b.is_zero():
                continue
            acc = acc + a * b
        out.append(acc)
    return Series(n_max, tuple(out))


def series_reciprocal(f: Series) -> Series:
    """Multiplicative inverse of a unit series.

    Requires the constant term to be a nonzero rational (no x part).
    """
    c0 = f.constant_term()
    if not c0.is_constant() or c0.is_zero():
        raise DomainError(
            "series_reciprocal requires a nonzero rational constant term, "
            f"got {c0}"
        )
    inv = rat(1) / c0.constant_value()
    out = [XPoly.constant(inv)]
    for n in range(1, f.order + 1):
        acc = XPoly.zero()
        for i in range(1, n + 1):
            a = f.coeffs[i]
            if a.is_zero():
                continue
            acc = acc + a * out[n - i]
        out.append(acc * (-inv))
    return Series(f.order, tuple(out))


def series_exp(f: Series) -> Series:
    """exp(f) = sum_k f^k / k!, for f with zero constant term."""
    if not f.constant_term().is_zero():
        raise DomainError("series_exp requires a zero constant term")
    out = Series.one(f.order)
    term = Series.one(f.order)
    for k in range(1, f.order + 1):
        term = series_mul(term, f).scale(rat(1, k))
        if term.is_zero():
            break
        out = out + term
    return out


def series_log(f: Series) -> Series:
    """log(f) = sum_k (-1)^(k+1) (f-1)^k / k, for f with constant term 1."""
    c0 = f.constant_term()
    if not (c0.is_constant() and c0.constant_value() == 1):
        raise DomainError("series_log requires constant term 1")
    u = f - Series.one(f.order)
    out = Series.zero(f.order)
    power = Series.one(f.order)
    for k in range(1, f.order + 1):
        power = series_mul(power, u)
        if power.is_zero():
            break
        out = out + power.scale(rat((-1) ** (k + 1), k))
    return out


def series_pow_rat(f: Series, alpha) -> Series:
    """f**alpha for rational alpha, defined as exp(alpha * log(f)).

    Requires constant term 1.  For integer alpha >= 0 this agrees exactly
    with repeated multiplication.
    """
    c0 = f.constant_term()
    if not (c0.is_constant() and c0.constant_value() == 1):
        raise DomainError("series_pow_rat requires constant term 1")
    return series_exp(series_log(f).scale(rat(alpha)))


def series_compose(f: Series, g: Series) -> Series:
    """Composition f(g(t)); g must have a zero constant term."""
    f._check_order(g)
    if not g.constant_term().is_zero():
        raise DomainError("series_compose requires the inner constant term to be 0")
    n_max = f.order
    acc = Series(n_max, (f.coeffs[0],))
    g_pow = Series.one(n_max)
    for k in range(1, n_max + 1):
        g_pow = series_mul(g_pow, g)
        fk = f.coeffs[k]
        if fk.is_zero() or g_pow.is_zero():
            continue
        acc = acc + g_pow.scale(fk)
    return acc


def series_div_t_pow(f: Series, m: int) -> Series:
    """Divide by t^m; the low m coefficients must vanish.  Order drops by m."""
    if m <= 0:
        raise ValueError("series_div_t_pow requires m >= 1")
    if m > f.order:
        raise ValueError(f"cannot divide an order-{f.order} series by t^{m}")
    for n in range(m):
        if not f.coeffs[n].is_zero():
            raise DomainError(
                f"series_div_t_pow: coefficient of t^{n} is {f.coeffs[n]}, not 0"
            )
    return Series(f.order - m, f.coeffs[m:])


def series_to_json(f: Series) -> dict:
    return {"order": f.order, "coeffs": [xpoly_to_json(c) for c in f.coeffs]}


def series_from_json(data: dict) -> Series:
    coeffs: Sequence = [xpoly_from_json(c) for c in data["coeffs"]]
    return Series(int(data["order"]), coeffs)
