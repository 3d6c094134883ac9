"""Composition triangles (compositae) of generating functions.

For a series ``F(t) = sum_{n>0} f(n) t^n`` with no constant term, the
composita is the triangular array ``F(n, k) = [t^n] F(t)^k`` for
``1 <= k <= n``.  Equivalently it is the sum of ``f(l_1)...f(l_k)`` over
all compositions of ``n`` into exactly ``k`` positive parts; that second
reading is exponential to evaluate and is kept here only as the
independent brute-force oracle.

This module provides both constructions, the transformation rules of the
calculus (scaling the function, scaling the argument, multiplying by an
arbitrary series, adding two functions, composing two functions), the
extraction of composition coefficients, a catalog of closed-form
triangles, and Stirling numbers of both kinds.

Conventions used by the closed catalog:

* ``stirling("first", n, k)`` is the *unsigned* count (permutations of n
  elements with k cycles), so rows sum to n!.
* The triangle of ``log(1+t)`` needs the *signed* numbers
  ``s(n,k) = (-1)^(n-k) [n k]``: the entries of ``log(1+t)^k`` alternate
  in sign, and the unsigned reading already fails at (n,k) = (3,2).
  :func:`stirling_signed` is the helper every signed formula goes through.

The composition rule deserves a note on orientation, recorded in
:data:`COMPOSITION_ORIENTATION_NOTE` and checked empirically by
:func:`algebra_rule_checks`: the sum ``sum_k F(n,k) R(k,m)`` builds the
triangle of ``R(F(t))``, i.e. the triangle indexed by the *row* belongs to
the inner function.  :func:`composita_compose` therefore takes explicit
``(outer, inner)`` arguments.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .ring import XPoly, binom, factorial, rat, xpoly_from_json, xpoly_to_json
from .series import DomainError, Series, series_compose, series_mul

__all__ = [
    "stirling",
    "stirling_signed",
    "stirling_second_explicit",
    "StirlingTable",
    "Composita",
    "composita_from_powers",
    "composita_bruteforce",
    "composita_scale_const",
    "composita_scale_arg",
    "composita_mul_series",
    "composita_add",
    "composita_compose",
    "compose_coeffs",
    "CLOSED_COMPOSITA_NAMES",
    "closed_composita",
    "closed_source_series",
    "algebra_rule_checks",
    "COMPOSITION_ORIENTATION_NOTE",
]


# ---------------------------------------------------------------------------
# Stirling numbers


_first_rows: list[list[int]] = [[1]]
_second_rows: list[list[int]] = [[1]]


def _grow(rows: list[list[int]], n: int, second: bool) -> None:
    while len(rows) <= n:
        m = len(rows)
        prev = rows[-1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            above = prev[k] if k < m else 0
            weight = k if second else m - 1
            row[k] = prev[k - 1] + weight * above
        rows.append(row)


def stirling(kind: str, n: int, k: int) -> int:
    """Stirling number of the first (unsigned) or second kind, by recurrence."""
    if kind not in ("first", "second"):
        raise ValueError(f"kind must be 'first' or 'second', not {kind!r}")
    if not 0 <= k <= n:
        raise ValueError(f"stirling requires 0 <= k <= n, got n={n}, k={k}")
    rows = _second_rows if kind == "second" else _first_rows
    _grow(rows, n, kind == "second")
    return rows[n][k]


def stirling_signed(n: int, k: int) -> int:
    """Signed Stirling number of the first kind: (-1)^(n-k) times the count."""
    return (-1) ** (n - k) * stirling("first", n, k)


def stirling_second_explicit(n: int, k: int) -> int:
    """Second kind via the explicit alternating-binomial sum.

    Independent of the recurrence route; the two must agree, which the test
    suite checks.
    """
    if not 0 <= k <= n:
        raise ValueError(f"stirling requires 0 <= k <= n, got n={n}, k={k}")
    total = sum((-1) ** (k - j) * binom(k, j) * j**n for j in range(k + 1))
    q, r = divmod(total, factorial(k))
    if r:  # pragma: no cover - would indicate a broken formula
        raise ArithmeticError("explicit Stirling sum not divisible by k!")
    return q


class StirlingTable:
    """Triangular table of Stirling numbers up to row ``size``."""

    __slots__ = ("kind", "size", "values")

    def __init__(self, kind: str, size: int):
        if size < 0:
            raise ValueError("size must be >= 0")
        self.kind = kind
        self.size = size
        self.values = tuple(
            tuple(stirling(kind, n, k) for k in range(n + 1)) for n in range(size + 1)
        )

    def value(self, n: int, k: int) -> int:
        if not 0 <= k <= n <= self.size:
            raise ValueError(f"index ({n}, {k}) outside table of size {self.size}")
        return self.values[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        return self.values[n]


# ---------------------------------------------------------------------------
# The Composita type


def _as_xpoly(v) -> XPoly:
    return v if isinstance(v, XPoly) else XPoly.constant(rat(v))


class Composita:
    """Triangular array F(n, k) of XPoly entries, 1 <= k <= n <= order."""

    __slots__ = ("order", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rs = []
        for n, row in enumerate(rows, start=1):
            row = tuple(_as_xpoly(e) for e in row)
            if len(row) != n:
                raise ValueError(f"row {n} must have {n} entries, got {len(row)}")
            rs.append(row)
        object.__setattr__(self, "rows", tuple(rs))
        object.__setattr__(self, "order", len(rs))

    def __setattr__(self, name, value):  # pragma: no cover - safety net
        raise AttributeError("Composita is immutable")

    def entry(self, n: int, k: int) -> XPoly:
        if not 1 <= k <= n <= self.order:
            raise ValueError(
                f"composita entry ({n}, {k}) does not exist (order {self.order})"
            )
        return self.rows[n - 1][k - 1]

    def first_column(self) -> tuple[XPoly, ...]:
        """The source coefficients f(1), ..., f(order) (the k = 1 column)."""
        return tuple(self.rows[n - 1][0] for n in range(1, self.order + 1))

    def __eq__(self, other) -> bool:
        return isinstance(other, Composita) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(("Composita", self.rows))

    def __repr__(self) -> str:
        return f"Composita(order={self.order})"

    def text(self) -> str:
        """Aligned triangle, one row per line, entries left-justified."""
        cells = [[str(e) for e in row] for row in self.rows]
        widths: list[int] = []
        for row in cells:
            for k, s in enumerate(row):
                if k == len(widths):
                    widths.append(len(s))
                else:
                    widths[k] = max(widths[k], len(s))
        lines = []
        for row in cells:
            padded = [s.ljust(widths[k]) for k, s in enumerate(row)]
            lines.append("  ".join(padded).rstrip())
        return "\n".join(lines)

    def to_json(self) -> list[list[list[str]]]:
        return [[xpoly_to_json(e) for e in row] for row in self.rows]

    @classmethod
    def from_json(cls, data) -> "Composita":
        return cls([[xpoly_from_json(e) for e in row] for row in data])


# ---------------------------------------------------------------------------
# Constructions


def composita_from_powers(f: Series, order: int) -> Composita:
    """Composita read off the powers f, f^2, ..., f^order.

    This is the polynomial-time construction: one truncated product per
    power.  ``f`` must have a zero constant term, must not be the zero
    series, and must carry at least ``order`` coefficients.
    """
    if not f.constant_term().is_zero():
        raise DomainError("composita requires a zero constant term")
    if f.order < order:
        raise ValueError(f"series order {f.order} is below the requested {order}")
    if order < 1:
        raise ValueError("composita order must be >= 1")
    base = f.truncate(order)
    if base.is_zero():
        raise DomainError("the zero series has no composita")
    rows: list[list[XPoly]] = [[] for _ in range(order)]
    power = Series.one(order)
    for k in range(1, order + 1):
        power = series_mul(power, base)
        for n in range(k, order + 1):
            rows[n - 1].append(power[n])
    return Composita(rows)


def _compositions(n: int, k: int):
    """All ordered tuples of k positive integers summing to n."""
    for cuts in combinations(range(1, n), k - 1):
        prev = 0
        parts = []
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(n - prev)
        yield parts


BRUTEFORCE_LIMIT = 12


def composita_bruteforce(f: Series, n: int, k: int) -> XPoly:
    """Composita entry by direct enumeration of compositions of n.

    Exponential in n; capped at n <= 12 and meant purely as the oracle the
    fast construction is checked against.
    """
    if not 1 <= k <= n <= BRUTEFORCE_LIMIT:
        raise ValueError(
            f"bruteforce requires 1 <= k <= n <= {BRUTEFORCE_LIMIT}, got ({n}, {k})"
        )
    if f.order < n:
        raise ValueError(f"series order {f.order} is below n = {n}")
    if not f.constant_term().is_zero():
        raise DomainError("composita requires a zero constant term")
    total = XPoly.zero()
    for parts in _compositions(n, k):
        prod = XPoly.one()
        for p in parts:
            c = f[p]
            if c.is_zero():
                prod = XPoly.zero()
                break
            prod = prod * c
        total = total + prod
    return total


# ---------------------------------------------------------------------------
# Transformation rules


def composita_scale_const(c: Composita, alpha) -> Composita:
    """Triangle of alpha*F(t): entry (n, k) picks up alpha^k."""
    alpha = rat(alpha)
    return Composita(
        [
            [c.entry(n, k) * alpha**k for k in range(1, n + 1)]
            for n in range(1, c.order + 1)
        ]
    )


def composita_scale_arg(c: Composita, alpha) -> Composita:
    """Triangle of F(alpha*t): entry (n, k) picks up alpha^n."""
    alpha = rat(alpha)
    return Composita(
        [
            [c.entry(n, k) * alpha**n for k in range(1, n + 1)]
            for n in range(1, c.order + 1)
        ]
    )


def composita_mul_series(c: Composita, b: Series, order: int) -> Composita:
    """Triangle of F(t)*B(t) for an arbitrary series B.

    Entry (n, k) = sum_{i=k..n} F(i, k) * [t^(n-i)] B(t)^k.
    """
    if order < 1 or order > c.order:
        raise ValueError(f"order must be within 1..{c.order}")
    if b.order < order - 1:
        raise ValueError("B carries too few coefficients for the requested order")
    b_trunc = b if b.order == order else Series(order, b.coeffs[: order + 1])
    b_pows: list[Series] = [Series.one(order)]
    for _ in range(order):
        b_pows.append(series_mul(b_pows[-1], b_trunc))
    rows = []
    for n in range(1, order + 1):
        row = []
        for k in range(1, n + 1):
            acc = XPoly.zero()
            for i in range(k, n + 1):
                fe = c.entry(i, k)
                if fe.is_zero():
                    continue
                be = b_pows[k][n - i]
                if be.is_zero():
                    continue
                acc = acc + fe * be
            row.append(acc)
        rows.append(row)
    return Composita(rows)


def composita_add(cf: Composita, cg: Composita) -> Composita:
    """Triangle of F(t)+G(t) from the two triangles.

    Entry (n, k) = F(n,k) + G(n,k)
    + sum_{j=1..k-1} C(k,j) sum_{i=j..n-k+j} F(i,j) G(n-i, k-j);
    empty inner ranges contribute nothing.
    """
    if cf.order != cg.order:
        raise ValueError(f"order mismatch: {cf.order} vs {cg.order}")
    order = cf.order
    rows = []
    for n in range(1, order + 1):
        row = []
        for k in range(1, n + 1):
            acc = cf.entry(n, k) + cg.entry(n, k)
            for j in range(1, k):
                coeff = binom(k, j)
                cross = XPoly.zero()
                for i in range(j, n - k + j + 1):
                    fe = cf.entry(i, j)
                    if fe.is_zero():
                        continue
                    ge = cg.entry(n - i, k - j)
                    if ge.is_zero():
                        continue
                    cross = cross + fe * ge
                acc = acc + cross * coeff
            row.append(acc)
        rows.append(row)
    return Composita(rows)


COMPOSITION_ORIENTATION_NOTE = (
    "composition rule: the triangle of outer(inner(t)) is "
    "entry(n,m) = sum_{k=m..n} inner(n,k)*outer(k,m); the inner function's "
    "triangle takes the row index. Swapping the roles yields inner(outer(t)) "
    "instead. Pinned by comparing against composita_from_powers of the "
    "explicitly composed series."
)


def composita_compose(outer: Composita, inner: Composita) -> Composita:
    """Triangle of the composition outer(inner(t)).

    Entry (n, m) = sum_{k=m..n} inner(n, k) * outer(k, m).  See
    :data:`COMPOSITION_ORIENTATION_NOTE` for how this orientation was fixed.
    """
    if outer.order != inner.order:
        raise ValueError(f"order mismatch: {outer.order} vs {inner.order}")
    order = outer.order
    rows = []
    for n in range(1, order + 1):
        row = []
        for m in range(1, n + 1):
            acc = XPoly.zero()
            for k in range(m, n + 1):
                ie = inner.entry(n, k)
                if ie.is_zero():
                    continue
                oe = outer.entry(k, m)
                if oe.is_zero():
                    continue
                acc = acc + ie * oe
            row.append(acc)
        rows.append(row)
    return Composita(rows)


def compose_coeffs(c: Composita, r: Sequence) -> list[XPoly]:
    """Coefficients of R(F(t)) from F's triangle and R's coefficients.

    ``r[k]`` is the coefficient of t^k in the outer series R.  Result
    a(0) = r(0) and a(n) = sum_{k=1..n} F(n, k) r(k).
    """
    if len(r) < c.order + 1:
        raise ValueError(
            f"need at least {c.order + 1} outer coefficients, got {len(r)}"
        )
    out = [XPoly.constant(rat(r[0]))]
    for n in range(1, c.order + 1):
        acc = XPoly.zero()
        for k in range(1, n + 1):
            e = c.entry(n, k)
            if e.is_zero():
                continue
            acc = acc + e * rat(r[k])
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Closed-form catalog

CLOSED_COMPOSITA_NAMES = (
    "linear_quadratic",
    "rational_bt_1_minus_at",
    "log1p",
    "expm1",
    "two_x_t_minus_t2",
    "lambert_w",
)


def _closed_entry(name: str, params: dict, n: int, k: int) -> XPoly:
    if name == "linear_quadratic":
        a, b = rat(params["a"]), rat(params["b"])
        if n > 2 * k:
            return XPoly.zero()
        c = binom(k, n - k)
        if c == 0:
            return XPoly.zero()
        return XPoly.constant(c * a ** (2 * k - n) * b ** (n - k))
    if name == "rational_bt_1_minus_at":
        a, b = rat(params["a"]), rat(params["b"])
        c = binom(n - 1, k - 1)
        if c == 0:
            return XPoly.zero()
        return XPoly.constant(c * a ** (n - k) * b**k)
    if name == "log1p":
        return XPoly.constant(
            rat(factorial(k), factorial(n)) * stirling_signed(n, k)
        )
    if name == "expm1":
        return XPoly.constant(
            rat(factorial(k), factorial(n)) * stirling("second", n, k)
        )
    if name == "two_x_t_minus_t2":
        if n > 2 * k:
            return XPoly.zero()
        c = binom(k, n - k)
        if c == 0:
            return XPoly.zero()
        value = c * rat(2) ** (2 * k - n) * (-1) ** (n - k)
        return XPoly.monomial(value, 2 * k - n)
    if name == "lambert_w":
        value = (
            rat(k)
            * rat(n) ** (n - k - 1)
            * (-1) ** (n - k)
            / factorial(n - k)
        )
        return XPoly.constant(value)
    raise ValueError(
        f"unknown closed composita {name!r}; expected one of {CLOSED_COMPOSITA_NAMES}"
    )


def closed_composita(name: str, params: dict | None, order: int) -> Composita:
    """Catalog triangle filled from its closed formula.

    Every catalog entry equals ``composita_from_powers`` of the matching
    series (for ``lambert_w``, of the series rebuilt from the k = 1
    column); the test suite enforces that equality.
    """
    if order < 1:
        raise ValueError("composita order must be >= 1")
    params = params or {}
    if name in ("linear_quadratic", "rational_bt_1_minus_at"):
        missing = {"a", "b"} - set(params)
        if missing:
            raise ValueError(f"{name} requires parameters a and b")
    return Composita(
        [
            [_closed_entry(name, params, n, k) for k in range(1, n + 1)]
            for n in range(1, order + 1)
        ]
    )


def closed_source_series(name: str, params: dict | None, order: int) -> Series:
    """The series whose composita the named closed formula describes."""
    params = params or {}
    if name == "linear_quadratic":
        a, b = rat(params["a"]), rat(params["b"])
        return Series.from_poly(order, (0, a, b))
    if name == "rational_bt_1_minus_at":
        a, b = rat(params["a"]), rat(params["b"])
        coeffs = [rat(0)] + [b * a ** (n - 1) for n in range(1, order + 1)]
        return Series(order, coeffs)
    if name == "log1p":
        coeffs = [rat(0)] + [rat((-1) ** (n + 1), n) for n in range(1, order + 1)]
        return Series(order, coeffs)
    if name == "expm1":
        coeffs = [rat(0)] + [rat(1, factorial(n)) for n in range(1, order + 1)]
        return Series(order, coeffs)
    if name == "two_x_t_minus_t2":
        return Series.from_poly(order, (XPoly.zero(), XPoly.monomial(2, 1), XPoly.constant(-1)))
    if name == "lambert_w":
        tri = closed_composita("lambert_w", None, order)
        return Series(order, (XPoly.zero(),) + tri.first_column())
    raise ValueError(
        f"unknown closed composita {name!r}; expected one of {CLOSED_COMPOSITA_NAMES}"
    )


# ---------------------------------------------------------------------------
# Rule validation (used by the verify command and the test suite)


def _rule_samples(order: int) -> list[Series]:
    x = XPoly.x()
    return [
        Series.from_poly(order, [0, 1, 1]),
        Series.from_poly(order, [0, rat(1, 2), 0, -2, 0, 0, rat(3, 5)]),
        Series.from_poly(order, [XPoly.zero(), 2 * x, XPoly.constant(-1)]),
    ]


def algebra_rule_checks(order: int = 8) -> list[dict]:
    """Validate each triangle-transformation rule against direct series work.

    Every rule result is compared entry-for-entry with
    ``composita_from_powers`` applied to the explicitly transformed series.
    Returns one record per rule with a ``status`` of ``match`` or
    ``mismatch``; the composition record carries the orientation note.
    """
    results = []
    samples = _rule_samples(order)

    def record(name: str, ok: bool, note: str) -> None:
        results.append(
            {
                "rule": name,
                "max_n": order,
                "status": "match" if ok else "mismatch",
                "note": note,
            }
        )

    alpha = rat(-3, 2)
    ok = True
    for f in samples:
        direct = composita_from_powers(f.scale(alpha), order)
        ruled = composita_scale_const(composita_from_powers(f, order), alpha)
        ok = ok and direct == ruled
    record("scale-constant", ok, f"A(t) = c*F(t) with c = {alpha}")

    ok = True
    for f in samples:
        scaled = Series(order, [f[n] * alpha**n for n in range(order + 1)])
        direct = composita_from_powers(scaled, order)
        ruled = composita_scale_arg(composita_from_powers(f, order), alpha)
        ok = ok and direct == ruled
    record("scale-argument", ok, f"A(t) = F(c*t) with c = {alpha}")

    b = Series.from_poly(order, [1, -1, rat(2, 3), 0, 1])
    ok = True
    for f in samples:
        direct = composita_from_powers(series_mul(f, b), order)
        ruled = composita_mul_series(composita_from_powers(f, order), b, order)
        ok = ok and direct == ruled
    record("product", ok, "A(t) = F(t)*B(t) against the product series")

    ok = True
    for f, g in [(samples[0], samples[1]), (samples[1], samples[2])]:
        direct = composita_from_powers(f + g, order)
        ruled = composita_add(
            composita_from_powers(f, order), composita_from_powers(g, order)
        )
        ok = ok and direct == ruled
    record("sum", ok, "A(t) = F(t)+G(t) against the sum series")

    ok = True
    for outer, inner in [(samples[0], samples[1]), (samples[2], samples[0])]:
        direct = composita_from_powers(series_compose(outer, inner), order)
        ruled = composita_compose(
            composita_from_powers(outer, order), composita_from_powers(inner, order)
        )
        ok = ok and direct == ruled
    record("composition", ok, COMPOSITION_ORIENTATION_NOTE)

    return results
