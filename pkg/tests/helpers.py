"""Small builders shared across the test modules."""

from composita.ring import XPoly, rat
from composita.series import Series


def P(*coeffs) -> XPoly:
    """XPoly from ascending coefficients; ints or 'p/q' strings."""
    return XPoly([rat(c) for c in coeffs])


def mono(c, k: int) -> XPoly:
    return XPoly.monomial(rat(c), k)


def S(order, *coeffs) -> Series:
    """Series from leading coefficients (rationals or XPoly)."""
    return Series.from_poly(order, coeffs)


def chebyshev_t_rec(n: int) -> XPoly:
    """Local three-term recurrence oracle, independent of the package's."""
    a, b = XPoly.one(), XPoly.x()
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, XPoly.monomial(2, 1) * b - a
    return b


def chebyshev_u_rec(n: int) -> XPoly:
    a, b = XPoly.one(), XPoly.monomial(2, 1)
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, XPoly.monomial(2, 1) * b - a
    return b


def hermite_rec(n: int) -> XPoly:
    a, b = XPoly.one(), XPoly.monomial(2, 1)
    if n == 0:
        return a
    for m in range(1, n):
        a, b = b, XPoly.monomial(2, 1) * b - a * (2 * m)
    return b
