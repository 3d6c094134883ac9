"""Sixteen classical polynomial families, each computed three ways.

Every family carries up to three independent routes to the polynomial
``P_n(x)``:

* ``family_closed`` evaluates an explicit coefficient formula built from
  binomials and Stirling numbers.  Where the source derivation gives two
  distinct compositions, both variants are implemented.
* ``family_oracle`` expands the family's generating function with the
  exact series engine and reads the coefficient of ``t^n`` (times ``n!``
  for the factorial-normalized families).
* ``family_reference``, where a classical recurrence or product form
  exists, computes the polynomial with no series machinery at all.

``verify_family`` compares the routes and returns verdicts.  Closed
formulas come in two transcription modes: ``raw`` is the formula exactly
as transcribed, and ``corrected`` (the default) applies the small index
and normalization fixes listed in :data:`CORRECTIONS`, each proven
necessary by a mismatch against the series oracle.  A correction is never
applied silently: families whose raw transcription already matches carry
an empty corrections tuple and report status ``match``.

Conventions.  The constant polynomial ``P_0`` is the constant term of the
generating function (composition formulas whose sums start at k = 1 leave
n = 0 to that convention).  First-kind Stirling brackets inside closed
formulas are the *signed* numbers (see :mod:`composita.triangle`).  All
parameters bind to exact rationals; only x stays symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .ring import (
    XPoly,
    binom,
    binom_generalized,
    factorial,
    rat,
    rat_to_str,
)
from .series import (
    Series,
    series_div_t_pow,
    series_exp,
    series_log,
    series_mul,
    series_pow_rat,
    series_reciprocal,
)
from .triangle import closed_source_series, stirling, stirling_signed

__all__ = [
    "FAMILY_NAMES",
    "EGF_FAMILIES",
    "REQUIRED_PARAMS",
    "VARIANTS",
    "CORRECTIONS",
    "RESOLUTION_NOTES",
    "FamilySpec",
    "VerificationVerdict",
    "make_spec",
    "default_specs",
    "family_gf_series",
    "family_oracle",
    "family_closed",
    "family_reference",
    "family_gf_expression",
    "verify_family",
    "bernoulli_number",
]


FAMILY_NAMES = (
    "chebyshev_t",
    "chebyshev_u",
    "legendre",
    "gegenbauer",
    "hermite",
    "laguerre",
    "stirling_poly",
    "abel",
    "bernoulli2",
    "gen_bernoulli",
    "euler",
    "peters",
    "narumi",
    "humbert",
    "lerch",
    "mahler",
)

#: Families whose generating function carries t^n/n!; extraction multiplies
#: the series coefficient by n!.
EGF_FAMILIES = frozenset(
    {
        "hermite",
        "stirling_poly",
        "abel",
        "bernoulli2",
        "gen_bernoulli",
        "euler",
        "peters",
        "narumi",
        "mahler",
    }
)

REQUIRED_PARAMS = {
    "abel": ("a",),
    "gegenbauer": ("alpha",),
    "laguerre": ("alpha",),
    "gen_bernoulli": ("alpha",),
    "peters": ("lambda", "mu"),
    "narumi": ("alpha",),
    "humbert": ("lambda",),
    "lerch": ("lambda",),
}

#: Families for which a second composition variant exists.
VARIANTS = {
    name: (1, 2)
    if name
    in ("gegenbauer", "stirling_poly", "bernoulli2", "gen_bernoulli", "peters", "narumi", "humbert")
    else (1,)
    for name in FAMILY_NAMES
}

#: Machine-readable corrections applied by the default "corrected" mode.
#: Every entry names the precise index or factor fixed; the raw mode keeps
#: the transcribed form and verify_family demonstrates its mismatch.
CORRECTIONS: dict[tuple[str, int], tuple[str, ...]] = {
    ("bernoulli2", 2): (
        "inner first-kind index: [n-j, k] leaves j unbound (the enclosing sums "
        "bind i); corrected to [n-i, k]. Raw evaluation necessarily uses the "
        "same binding, so this fix applies to both modes.",
        "overall factor n! restored: the transcribed sum gives the plain "
        "t^n coefficient, not the factorial-normalized b_n.",
    ),
    ("peters", 1): (
        "lower bound of the outer coefficient sum: i = 1 corrected to i = 0, "
        "restoring the constant term of the exponential factor (the i = 0 "
        "term contributes exactly [j = 0]).",
    ),
    ("narumi", 1): (
        "first-kind lower index in the innermost sum: [i+j, i] corrected to "
        "[i+j, j] (with the transcribed lower index i the alpha-free term of "
        "the coefficient at t^i is 1/i! instead of 0).",
    ),
    ("lerch", 1): (
        "generating-function exponent sign: (1 - x*log(1+t))^(+lambda) "
        "corrected to exponent -lambda, matching the generalized-binomial "
        "factor C(lambda+k-1, k) in the coefficient formula.",
    ),
}

#: Questions settled with no fix needed; surfaced in verification notes.
RESOLUTION_NOTES: dict[tuple[str, int], str] = {
    ("stirling_poly", 1): (
        "factor n!/k! confirmed correct: the n! is the factorial "
        "normalization absorbed into the coefficient sum."
    ),
    ("peters", 1): (
        "the 1/n! normalization inside the coefficient sum is confirmed "
        "correct as transcribed."
    ),
    ("laguerre", 1): (
        "generating function read as a plain sum over t^n; both transcribed "
        "forms of the (1-t)^(-alpha-1) coefficients agree."
    ),
    ("lerch", 1): "generating function read as a plain sum over t^n.",
    ("gen_bernoulli", 2): (
        "C(k+alpha-1, alpha-1) evaluated as C(k+alpha-1, k), the only "
        "reading defined for rational alpha."
    ),
}


def _rat_params(family: str, params: dict) -> dict:
    required = REQUIRED_PARAMS.get(family, ())
    given = dict(params or {})
    unknown = set(given) - set(required)
    if unknown:
        raise ValueError(f"{family} does not take parameter(s) {sorted(unknown)}")
    missing = set(required) - set(given)
    if missing:
        raise ValueError(f"{family} requires parameter(s) {sorted(missing)}")
    out = {k: rat(v) for k, v in given.items()}
    if family == "abel" and out["a"] == 0:
        raise ValueError("abel requires a != 0")
    if family == "peters" and out["mu"].denominator != 1:
        raise ValueError(
            "peters requires an integer mu: the leading scalar 2^(-mu) must "
            "stay rational"
        )
    return out


@dataclass(frozen=True)
class FamilySpec:
    """One family plus exact rational bindings for its parameters."""

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "params", _rat_params(self.family, self.params))

    @property
    def egf(self) -> bool:
        return self.family in EGF_FAMILIES

    def key(self) -> tuple:
        return (self.family, tuple(sorted((k, rat_to_str(v)) for k, v in self.params.items())))

    def label(self) -> str:
        if not self.params:
            return self.family
        inside = ",".join(f"{k}={rat_to_str(v)}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inside})"


def make_spec(family: str, **params) -> FamilySpec:
    return FamilySpec(family, params)


def default_specs() -> list[FamilySpec]:
    """One canonical binding per family, used by the verify command."""
    defaults = {
        "abel": {"a": 1},
        "gegenbauer": {"alpha": rat(1, 2)},
        "laguerre": {"alpha": rat(1, 2)},
        "gen_bernoulli": {"alpha": 1},
        "peters": {"lambda": 2, "mu": -2},
        "narumi": {"alpha": 1},
        "humbert": {"lambda": 1},
        "lerch": {"lambda": 2},
    }
    return [FamilySpec(name, defaults.get(name, {})) for name in FAMILY_NAMES]


@dataclass
class VerificationVerdict:
    """Outcome of comparing one family variant across its routes."""

    family: str
    variant: int
    max_n: int
    status: str  # match | corrected-match | mismatch
    first_mismatch: int | None
    note: str

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "variant": self.variant,
            "max_n": self.max_n,
            "status": self.status,
            "first_mismatch": self.first_mismatch,
            "note": self.note,
        }


# ---------------------------------------------------------------------------
# Series oracles


def _x_times_t(order: int) -> Series:
    return Series.from_poly(order, (XPoly.zero(), XPoly.x()))


def _one_plus_t_pow_x(order: int) -> Series:
    return series_exp(series_log(Series.from_poly(order, (1, 1))).scale(XPoly.x()))


def _quadratic_kernel(order: int) -> Series:
    return Series.from_poly(order, (XPoly.one(), XPoly.monomial(-2, 1), XPoly.one()))


def family_gf_series(spec: FamilySpec, order: int) -> Series:
    """Expand the family's generating function to the requested order.

    Coefficients are the plain series coefficients; the n! scaling of the
    factorial-normalized families happens at extraction, not here.
    """
    p = spec.params
    fam = spec.family
    if fam == "chebyshev_t":
        num = Series.from_poly(order, (XPoly.one(), XPoly.monomial(-1, 1)))
        return series_mul(num, series_reciprocal(_quadratic_kernel(order)))
    if fam == "chebyshev_u":
        return series_reciprocal(_quadratic_kernel(order))
    if fam == "legendre":
        return series_pow_rat(_quadratic_kernel(order), rat(-1, 2))
    if fam == "gegenbauer":
        return series_pow_rat(_quadratic_kernel(order), -p["alpha"])
    if fam == "hermite":
        return series_exp(Series.from_poly(order, (XPoly.zero(), XPoly.monomial(2, 1), XPoly.constant(-1))))
    if fam == "laguerre":
        front = series_pow_rat(Series.from_poly(order, (1, -1)), -p["alpha"] - 1)
        geo = series_reciprocal(Series.from_poly(order, (1, -1)))
        arg = series_mul(Series.t(order), geo).scale(XPoly.monomial(-1, 1))
        return series_mul(front, series_exp(arg))
    if fam == "stirling_poly":
        wide = order + 1
        one_minus_emt = Series.one(wide) - series_exp(Series.from_poly(wide, (0, -1)))
        unit = series_div_t_pow(one_minus_emt, 1)
        return series_exp(series_log(unit).scale(XPoly((-1, -1))))
    if fam == "abel":
        a = p["a"]
        w = closed_source_series("lambert_w", None, max(order, 1)).truncate(order)
        w_at = Series(order, [w[n] * a**n for n in range(order + 1)])
        return series_exp(w_at.scale(XPoly.monomial(rat(1) / a, 1)))
    if fam == "bernoulli2":
        wide = order + 1
        unit = series_div_t_pow(series_log(Series.from_poly(wide, (1, 1))), 1)
        return series_mul(series_reciprocal(unit), _one_plus_t_pow_x(order))
    if fam == "gen_bernoulli":
        wide = order + 1
        expm1 = series_exp(Series.from_poly(wide, (0, 1))) - Series.one(wide)
        unit = series_div_t_pow(expm1, 1)
        return series_mul(series_pow_rat(unit, -p["alpha"]), series_exp(_x_times_t(order)))
    if fam == "euler":
        one_plus_et = Series.one(order) + series_exp(Series.from_poly(order, (0, 1)))
        inv = series_reciprocal(one_plus_et)
        return series_mul(series_exp(_x_times_t(order)), inv).scale(2)
    if fam == "peters":
        lam, mu = p["lambda"], p["mu"]
        half = (Series.one(order) + series_pow_rat(Series.from_poly(order, (1, 1)), lam)).scale(rat(1, 2))
        front = series_pow_rat(half, -mu).scale(rat(2) ** (-int(mu)))
        return series_mul(front, _one_plus_t_pow_x(order))
    if fam == "narumi":
        wide = order + 1
        unit = series_div_t_pow(series_log(Series.from_poly(wide, (1, 1))), 1)
        front = series_pow_rat(unit, -p["alpha"])
        return series_mul(front, _one_plus_t_pow_x(order))
    if fam == "humbert":
        base = Series.from_poly(order, (XPoly.one(), XPoly.monomial(-3, 1), XPoly.zero(), XPoly.one()))
        return series_pow_rat(base, -p["lambda"])
    if fam == "lerch":
        return _lerch_gf(order, p["lambda"], corrected_sign=True)
    if fam == "mahler":
        arg = Series.one(order) + Series.t(order) - series_exp(Series.from_poly(order, (0, 1)))
        return series_exp(arg.scale(XPoly.x()))
    raise ValueError(f"unknown family {fam!r}")


def _lerch_gf(order: int, lam, corrected_sign: bool) -> Series:
    base = Series.one(order) - series_log(Series.from_poly(order, (1, 1))).scale(XPoly.x())
    return series_pow_rat(base, -lam if corrected_sign else lam)


@lru_cache(maxsize=None)
def _oracle_cache(key: tuple, family: str, param_items: tuple, max_n: int) -> tuple:
    spec = FamilySpec(family, dict(param_items))
    gf = family_gf_series(spec, max_n)
    scale = spec.egf
    return tuple(gf[n] * factorial(n) if scale else gf[n] for n in range(max_n + 1))


def _oracle_polys(spec: FamilySpec, max_n: int) -> tuple:
    return _oracle_cache(spec.key(), spec.family, tuple(spec.params.items()), max_n)


def family_oracle(spec: FamilySpec, n: int) -> XPoly:
    """P_n by generating-function expansion (the series route)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _oracle_polys(spec, n)[n]


# ---------------------------------------------------------------------------
# Closed-form formulas

_s2 = lambda n, k: stirling("second", n, k)  # noqa: E731
_s1 = stirling_signed


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


def _falling_x(m: int) -> XPoly:
    """sum_k s(m,k) x^k, the falling factorial x(x-1)...(x-m+1)."""
    return XPoly([_s1(m, k) for k in range(m + 1)])


def _closed_chebyshev_t(p, n):
    if n == 0:
        return XPoly.one()
    acc = XPoly.zero()
    for k in range(_ceil_half(n), n + 1):
        c = rat(n) * binom(k, n - k) * rat(2) ** (2 * k - n - 1) / k * (-1) ** (n - k)
        acc = acc + XPoly.monomial(c, 2 * k - n)
    return acc


def _closed_chebyshev_u(p, n):
    acc = XPoly.zero()
    for k in range(_ceil_half(n), n + 1):
        c = rat(binom(k, n - k)) * rat(2) ** (2 * k - n) * (-1) ** (n - k)
        acc = acc + XPoly.monomial(c, 2 * k - n)
    return acc


def _closed_legendre(p, n):
    acc = XPoly.zero()
    for k in range(_ceil_half(n), n + 1):
        c = rat(binom(k, n - k) * binom(2 * k, k) * (-1) ** (n - k), 2**n)
        acc = acc + XPoly.monomial(c, 2 * k - n)
    return acc


def _closed_gegenbauer_v1(p, n):
    alpha = p["alpha"]
    acc = XPoly.zero()
    for m in range(n + 1):
        inner = XPoly.zero()
        for k in range(max(m, _ceil_half(n)), n + 1):
            c = rat(2 ** (2 * k - n), factorial(k)) * _s1(k, m) * binom(k, n - k)
            if c != 0:
                inner = inner + XPoly.monomial(c, 2 * k - n)
        acc = acc + inner * (alpha**m * (-1) ** (n - m))
    return acc


def _closed_gegenbauer_v2(p, n):
    alpha = p["alpha"]
    acc = XPoly.zero()
    for k in range(_ceil_half(n), n + 1):
        c = (
            binom(k, n - k)
            * binom_generalized(alpha + k - 1, k)
            * (-1) ** (n - k)
            * rat(2) ** (2 * k - n)
        )
        if c != 0:
            acc = acc + XPoly.monomial(c, 2 * k - n)
    return acc


def _closed_hermite(p, n):
    acc = XPoly.zero()
    for k in range(_ceil_half(n), n + 1):
        c = rat(factorial(n) * 2 ** (2 * k - n) * (-1) ** (n - k), factorial(n - k) * factorial(2 * k - n))
        acc = acc + XPoly.monomial(c, 2 * k - n)
    return acc


def laguerre_front_binomial(i: int, alpha):
    """[t^i] of (1-t)^(-alpha-1) as a generalized binomial coefficient."""
    return binom_generalized(alpha + i, i)


def laguerre_front_stirling(i: int, alpha):
    """The same coefficient through the signed first-kind Stirling sum."""
    total = rat(0)
    for k in range(i + 1):
        total += (alpha + 1) ** k * (-1) ** (i - k) * _s1(i, k)
    return total / factorial(i)


def _laguerre_tail(m: int) -> XPoly:
    if m == 0:
        return XPoly.one()
    acc = XPoly.zero()
    for k in range(1, m + 1):
        acc = acc + XPoly.monomial(rat((-1) ** k, factorial(k)) * binom(m - 1, k - 1), k)
    return acc


def _closed_laguerre(p, n):
    alpha = p["alpha"]
    acc = XPoly.zero()
    for i in range(n + 1):
        acc = acc + _laguerre_tail(n - i) * laguerre_front_binomial(i, alpha)
    return acc


def _ratio_shift_second(i: int, k: int):
    """[t^i] of ((exp(t)-1)/t - 1)^k via second-kind Stirling numbers."""
    total = rat(0)
    for j in range(k + 1):
        total += rat(factorial(j) * (-1) ** (k + j), factorial(i + j)) * binom(k, j) * _s2(i + j, j)
    return total


def _closed_stirling_poly_v1(p, n):
    acc = XPoly.zero()
    xp1 = XPoly((1, 1))
    for m in range(n + 1):
        inner = rat(0)
        for k in range(m, n + 1):
            jsum = rat(0)
            for j in range(k + 1):
                jsum += rat(factorial(j) * (-1) ** (k + j), factorial(n + j)) * binom(k, j) * _s2(n + j, j)
            inner += rat(factorial(n), factorial(k)) * _s1(k, m) * jsum
        acc = acc + xp1**m * (inner * (-1) ** (n + m))
    return acc


def _closed_stirling_poly_v2(p, n):
    acc = XPoly.zero()
    for k in range(n + 1):
        jsum = rat(0)
        for j in range(k + 1):
            jsum += rat(factorial(j) * (-1) ** (n + j), factorial(n + j)) * binom(k, j) * _s2(n + j, j)
        if jsum != 0:
            acc = acc + binom_generalized(XPoly((k, 1)), k) * jsum
    return acc * factorial(n)


def _closed_abel(p, n):
    a = p["a"]
    if n == 0:
        return XPoly.one()
    acc = XPoly.zero()
    for k in range(1, n + 1):
        c = a ** (n - k) * k * rat(n) ** (n - k - 1) * (-1) ** (n - k) * binom(n, k)
        acc = acc + XPoly.monomial(c, k)
    return acc


def _bernoulli2_front(m: int):
    """[t^m] of t/log(1+t) times m!, i.e. sum_k s(m,k)/(k+1)."""
    return sum((_s1(m, k) * rat(1, k + 1) for k in range(m + 1)), rat(0))


def _closed_bernoulli2_v1(p, n):
    acc = XPoly.zero()
    for i in range(n + 1):
        acc = acc + _falling_x(i) * (binom(n, i) * _bernoulli2_front(n - i))
    return acc


def _bernoulli2_front_alt(i: int):
    """[t^i] of t/log(1+t) through the reciprocal-composition route."""
    total = rat(0)
    for k in range(i + 1):
        for j in range(k + 1):
            total += rat((-1) ** j * factorial(j), factorial(j + i)) * binom(k, j) * _s1(j + i, j)
    return total


def _closed_bernoulli2_v2(p, n, corrected):
    acc = XPoly.zero()
    for i in range(n + 1):
        acc = acc + _falling_x(n - i) * (rat(1, factorial(n - i)) * _bernoulli2_front_alt(i))
    return acc * factorial(n) if corrected else acc


def _closed_gen_bernoulli(p, n, variant):
    alpha = p["alpha"]

    def coeff(i):
        if variant == 1:
            total = rat(0)
            for m in range(i + 1):
                ks = rat(0)
                for k in range(m, i + 1):
                    ks += rat(1, factorial(k)) * _s1(k, m) * _ratio_shift_second(i, k)
                total += (-alpha) ** m * ks
            return total
        total = rat(0)
        for k in range(i + 1):
            total += (-1) ** k * binom_generalized(alpha + k - 1, k) * _ratio_shift_second(i, k)
        return total

    acc = XPoly.zero()
    for i in range(n + 1):
        acc = acc + XPoly.monomial(rat(factorial(n), factorial(n - i)) * coeff(i), n - i)
    return acc


def _closed_euler(p, n):
    acc = XPoly.zero()
    for i in range(n + 1):
        inner = rat(0)
        for k in range(n - i + 1):
            inner += rat((-1) ** k * factorial(k), 2**k) * _s2(n - i, k)
        acc = acc + XPoly.monomial(binom(n, i) * inner, i)
    return acc


def _peters_w(j: int, m: int, lam):
    """sum_{k=m..j} {k,m} s(j,k) lambda^k."""
    total = rat(0)
    for k in range(m, j + 1):
        total += _s2(k, m) * _s1(j, k) * lam**k
    return total


def _closed_peters_v1(p, n, corrected):
    lam, mu = p["lambda"], p["mu"]
    lo = 0 if corrected else 1
    acc = XPoly.zero()
    for j in range(n + 1):
        u = rat(0)
        for i in range(lo, j + 1):
            msum = rat(0)
            for m in range(i, j + 1):
                msum += rat(1, 2**m) * _s1(m, i) * _peters_w(j, m, lam)
            u += (-mu) ** i * msum
        if u != 0:
            acc = acc + _falling_x(n - j) * (binom(n, j) * u)
    return acc * (rat(2) ** (-int(mu)))


def _closed_peters_v2(p, n):
    lam, mu = p["lambda"], p["mu"]
    scale = rat(2) ** (-int(mu))

    def t_coeff(i):
        total = rat(0)
        for k in range(i + 1):
            jsum = rat(0)
            for j in range(k + 1):
                jsum += (-1) ** j * binom(k, j) * binom_generalized(j * lam, i)
            total += rat(1, 2**k) * binom_generalized(mu + k - 1, k) * jsum
        return total * scale

    acc = XPoly.zero()
    for i in range(n + 1):
        c = t_coeff(i)
        if c != 0:
            acc = acc + binom_generalized(XPoly.x(), n - i) * c
    return acc * factorial(n)


def _closed_narumi_v1(p, n, corrected):
    alpha = p["alpha"]
    acc = XPoly.zero()
    for i in range(n + 1):
        msum = rat(0)
        for m in range(i + 1):
            ks = rat(0)
            for k in range(m, i + 1):
                js = rat(0)
                for j in range(k + 1):
                    low = j if corrected else i
                    js += _s1(i + j, low) * rat((-1) ** (j - k), factorial(j + i) * factorial(k - j))
                ks += _s1(k, m) * js
            msum += (-alpha) ** m * ks
        acc = acc + _falling_x(n - i) * (binom(n, i) * factorial(i) * msum)
    return acc


def _closed_narumi_v2(p, n):
    alpha = p["alpha"]
    acc = XPoly.zero()
    for i in range(n + 1):
        total = rat(0)
        for k in range(i + 1):
            jsum = rat(0)
            for j in range(k + 1):
                jsum += rat((-1) ** j * factorial(j), factorial(j + i)) * _s1(i + j, j) * binom(k, j)
            total += binom_generalized(alpha + k - 1, k) * jsum
        if total != 0:
            acc = acc + binom_generalized(XPoly.x(), n - i) * total
    return acc * factorial(n)


def _closed_humbert_v1(p, n):
    lam = p["lambda"]
    acc = XPoly.zero()
    for m in range(n + 1):
        inner = XPoly.zero()
        for j in range((n - m) // 2 + 1):
            cb = binom(n - 2 * j, j)
            if cb == 0:
                continue
            e = n - 3 * j
            c = rat(3**e, factorial(n - 2 * j)) * cb * _s1(n - 2 * j, m) * (-1) ** e
            if c != 0:
                inner = inner + XPoly.monomial(c, e)
        acc = acc + inner * ((-1) ** m * lam**m)
    return acc


def _closed_humbert_v2(p, n):
    lam = p["lambda"]
    acc = XPoly.zero()
    for m in range(n // 3 + 1):
        c = (
            binom(n - 2 * m, m)
            * rat(3) ** (n - 3 * m)
            * (-1) ** m
            * binom_generalized(lam + n - 2 * m - 1, n - 2 * m)
        )
        if c != 0:
            acc = acc + XPoly.monomial(c, n - 3 * m)
    return acc


def _closed_lerch(p, n):
    lam = p["lambda"]
    if n == 0:
        return XPoly.one()
    acc = XPoly.zero()
    for k in range(1, n + 1):
        c = rat(factorial(k), factorial(n)) * _s1(n, k) * binom_generalized(lam + k - 1, k)
        if c != 0:
            acc = acc + XPoly.monomial(c, k)
    return acc


def _closed_mahler(p, n):
    acc = XPoly.zero()
    for k in range(n + 1):
        total = 0
        for j in range(k + 1):
            total += (-1) ** j * binom(n, k - j) * _s2(n - k + j, j)
        if total:
            acc = acc + XPoly.monomial(total, k)
    return acc


def family_closed(spec: FamilySpec, variant: int, n: int, mode: str = "corrected") -> XPoly:
    """P_n from the explicit coefficient formula.

    ``mode`` selects the transcription: ``corrected`` (default) applies the
    fixes in :data:`CORRECTIONS`; ``raw`` evaluates the formula exactly as
    transcribed.
    """
    if variant not in VARIANTS[spec.family]:
        raise ValueError(f"{spec.family} has no variant {variant}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if mode not in ("corrected", "raw"):
        raise ValueError(f"mode must be 'corrected' or 'raw', not {mode!r}")
    corrected = mode == "corrected"
    p = spec.params
    fam = spec.family
    if fam == "chebyshev_t":
        return _closed_chebyshev_t(p, n)
    if fam == "chebyshev_u":
        return _closed_chebyshev_u(p, n)
    if fam == "legendre":
        return _closed_legendre(p, n)
    if fam == "gegenbauer":
        return _closed_gegenbauer_v1(p, n) if variant == 1 else _closed_gegenbauer_v2(p, n)
    if fam == "hermite":
        return _closed_hermite(p, n)
    if fam == "laguerre":
        return _closed_laguerre(p, n)
    if fam == "stirling_poly":
        return _closed_stirling_poly_v1(p, n) if variant == 1 else _closed_stirling_poly_v2(p, n)
    if fam == "abel":
        return _closed_abel(p, n)
    if fam == "bernoulli2":
        return _closed_bernoulli2_v1(p, n) if variant == 1 else _closed_bernoulli2_v2(p, n, corrected)
    if fam == "gen_bernoulli":
        return _closed_gen_bernoulli(p, n, variant)
    if fam == "euler":
        return _closed_euler(p, n)
    if fam == "peters":
        return _closed_peters_v1(p, n, corrected) if variant == 1 else _closed_peters_v2(p, n)
    if fam == "narumi":
        return _closed_narumi_v1(p, n, corrected) if variant == 1 else _closed_narumi_v2(p, n)
    if fam == "humbert":
        return _closed_humbert_v1(p, n) if variant == 1 else _closed_humbert_v2(p, n)
    if fam == "lerch":
        return _closed_lerch(p, n)
    if fam == "mahler":
        return _closed_mahler(p, n)
    raise ValueError(f"unknown family {fam!r}")


# ---------------------------------------------------------------------------
# Classical references


@lru_cache(maxsize=None)
def bernoulli_number(n: int):
    """Bernoulli number B_n via the defining recurrence (B_1 = -1/2)."""
    if n == 0:
        return rat(1)
    total = rat(0)
    for j in range(n):
        total += binom(n + 1, j) * bernoulli_number(j)
    return -total / binom(n + 1, n)


@lru_cache(maxsize=None)
def _three_term(key: tuple, family: str, param_items: tuple, n: int) -> XPoly:
    p = dict(param_items)
    x = XPoly.x()
    if n == 0:
        return XPoly.one()
    if n == 1:
        if family in ("chebyshev_t", "legendre"):
            return x
        if family in ("chebyshev_u", "hermite"):
            return XPoly.monomial(2, 1)
        return XPoly.monomial(2 * p["alpha"], 1)
    prev = _three_term(key, family, param_items, n - 1)
    prev2 = _three_term(key, family, param_items, n - 2)
    if family == "chebyshev_t" or family == "chebyshev_u":
        return XPoly.monomial(2, 1) * prev - prev2
    if family == "legendre":
        return (XPoly.monomial(2 * n - 1, 1) * prev - prev2 * (n - 1)) * rat(1, n)
    if family == "hermite":
        return XPoly.monomial(2, 1) * prev - prev2 * (2 * (n - 1))
    if family == "gegenbauer":
        alpha = p["alpha"]
        return (XPoly.monomial(2 * (n + alpha - 1), 1) * prev - prev2 * (n + 2 * alpha - 2)) * rat(1, n)
    raise ValueError(family)


def family_reference(spec: FamilySpec, n: int) -> XPoly | None:
    """Independent classical value, or None when no reference exists.

    Chebyshev, Legendre, Hermite and Gegenbauer use their three-term
    recurrences; Abel uses the product x(x - n a)^(n-1); the generalized
    Bernoulli family at alpha = 1 uses classical Bernoulli polynomials
    built from the Bernoulli-number recurrence.
    """
    fam = spec.family
    if fam in ("chebyshev_t", "chebyshev_u", "legendre", "hermite", "gegenbauer"):
        return _three_term(spec.key(), fam, tuple(spec.params.items()), n)
    if fam == "abel":
        if n == 0:
            return XPoly.one()
        shift = XPoly((-spec.params["a"] * n, 1))
        return XPoly.x() * shift ** (n - 1)
    if fam == "gen_bernoulli" and spec.params["alpha"] == 1:
        acc = XPoly.zero()
        for k in range(n + 1):
            acc = acc + XPoly.monomial(binom(n, k) * bernoulli_number(k), n - k)
        return acc
    return None


# ---------------------------------------------------------------------------
# Generating-function expression registration


def _lit(r) -> str:
    return rat_to_str(rat(r))


def family_gf_expression(spec: FamilySpec) -> str | None:
    """The family's generating function in the expression grammar.

    Returns None for abel: its generating function goes through the
    inverse-function series, which the grammar (by design) cannot express.
    """
    p = spec.params
    fam = spec.family
    if fam == "chebyshev_t":
        return "(1 - x*t)/(1 - 2*x*t + t^2)"
    if fam == "chebyshev_u":
        return "1/(1 - 2*x*t + t^2)"
    if fam == "legendre":
        return "(1 - 2*x*t + t^2)^(-1/2)"
    if fam == "gegenbauer":
        return f"(1 - 2*x*t + t^2)^({_lit(-p['alpha'])})"
    if fam == "hermite":
        return "exp(2*x*t - t^2)"
    if fam == "laguerre":
        return f"(1 - t)^({_lit(-p['alpha'] - 1)})*exp(x*t/(t - 1))"
    if fam == "stirling_poly":
        return "(t/(1 - exp(-t)))^(x + 1)"
    if fam == "abel":
        return None
    if fam == "bernoulli2":
        return "t*(1 + t)^(x)/log(1 + t)"
    if fam == "gen_bernoulli":
        return f"exp(x*t)*(t/(exp(t) - 1))^({_lit(p['alpha'])})"
    if fam == "euler":
        return "2*exp(x*t)/(1 + exp(t))"
    if fam == "peters":
        return f"(1 + (1 + t)^({_lit(p['lambda'])}))^({_lit(-p['mu'])})*(1 + t)^(x)"
    if fam == "narumi":
        return f"(t/log(1 + t))^({_lit(p['alpha'])})*(1 + t)^(x)"
    if fam == "humbert":
        return f"(1 - 3*x*t + t^3)^({_lit(-p['lambda'])})"
    if fam == "lerch":
        return f"(1 - x*log(1 + t))^({_lit(-p['lambda'])})"
    if fam == "mahler":
        return "exp(x*(1 + t - exp(t)))"
    raise ValueError(f"unknown family {fam!r}")


# ---------------------------------------------------------------------------
# Verification


def _first_difference(values_a, values_b) -> int | None:
    for n, (a, b) in enumerate(zip(values_a, values_b)):
        if a != b:
            return n
    return None


def verify_family(spec: FamilySpec, max_n: int) -> list[VerificationVerdict]:
    """Compare every variant's closed form against the series oracle.

    Returns one verdict per variant.  Where corrections apply, the raw
    transcription is evaluated too and the verdict records the first n at
    which it diverges.  Where a classical reference exists it is compared
    three-way; a reference disagreement downgrades the verdict to
    ``mismatch``.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    oracle = _oracle_polys(spec, max_n)
    verdicts = []
    for variant in VARIANTS[spec.family]:
        corrected = [family_closed(spec, variant, n, "corrected") for n in range(max_n + 1)]
        bad = _first_difference(corrected, oracle)
        notes = []
        corrections = CORRECTIONS.get((spec.family, variant), ())
        resolution = RESOLUTION_NOTES.get((spec.family, variant))
        first_mismatch = None
        if bad is not None:
            status = "mismatch"
            first_mismatch = bad
            notes.append(f"corrected closed form diverges from the series oracle at n = {bad}")
        elif corrections:
            status = "corrected-match"
            if spec.family == "lerch":
                raw_oracle = _lerch_gf(max_n, spec.params["lambda"], corrected_sign=False)
                raw_vals = [raw_oracle[n] for n in range(max_n + 1)]
                first_mismatch = _first_difference(raw_vals, corrected)
                notes.append(
                    "with the transcribed exponent sign the generating function "
                    f"first disagrees at n = {first_mismatch}; the opposite sign "
                    "matches at every checked n"
                )
            else:
                raw = [family_closed(spec, variant, n, "raw") for n in range(max_n + 1)]
                first_mismatch = _first_difference(raw, oracle)
                notes.append(f"raw transcription first diverges at n = {first_mismatch}")
            notes.extend(corrections)
        else:
            status = "match"
        if resolution:
            notes.append(resolution)
        ref_checked = 0
        if status != "mismatch":
            for n in range(max_n + 1):
                ref = family_reference(spec, n)
                if ref is None:
                    break
                ref_checked += 1
                if ref != oracle[n]:
                    status = "mismatch"
                    first_mismatch = n
                    notes.append(f"classical reference disagrees at n = {n}")
                    break
        if ref_checked:
            notes.append(f"cross-checked against the classical reference for n <= {max_n}")
        verdicts.append(
            VerificationVerdict(
                family=spec.label(),
                variant=variant,
                max_n=max_n,
                status=status,
                first_mismatch=first_mismatch,
                note="; ".join(notes),
            )
        )
    return verdicts
