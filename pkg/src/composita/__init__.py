"""Exact calculus of composition triangles for ordinary generating functions.

The package computes the triangular array of coefficients of the powers of
a generating function (its composita), implements the transformation rules
of that calculus, and uses it to build and verify explicit coefficient
formulas for sixteen classical polynomial families.  All arithmetic is
exact rational arithmetic; nothing is ever rounded.
"""

from .ring import (
    RATIONAL_BACKEND,
    Rational,
    RationalType,
    XPoly,
    binom,
    binom_generalized,
    rat,
    rat_arith,
    rat_from_str,
    rat_to_str,
    xpoly_arith,
    xpoly_eval,
)
from .series import (
    DomainError,
    Series,
    series_compose,
    series_div_t_pow,
    series_exp,
    series_log,
    series_mul,
    series_pow_rat,
    series_reciprocal,
)
from .triangle import (
    Composita,
    StirlingTable,
    closed_composita,
    closed_source_series,
    compose_coeffs,
    composita_add,
    composita_bruteforce,
    composita_compose,
    composita_from_powers,
    composita_mul_series,
    composita_scale_arg,
    composita_scale_const,
    stirling,
    stirling_second_explicit,
    stirling_signed,
)
from .families import (
    FAMILY_NAMES,
    FamilySpec,
    VerificationVerdict,
    family_closed,
    family_gf_expression,
    family_oracle,
    family_reference,
    verify_family,
)
from .gfexpr import GfAst, GfDomainError, GfSyntaxError, evaluate, parse, pretty

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "RATIONAL_BACKEND",
    "Rational",
    "RationalType",
    "XPoly",
    "binom",
    "binom_generalized",
    "rat",
    "rat_arith",
    "rat_from_str",
    "rat_to_str",
    "xpoly_arith",
    "xpoly_eval",
    "DomainError",
    "Series",
    "series_compose",
    "series_div_t_pow",
    "series_exp",
    "series_log",
    "series_mul",
    "series_pow_rat",
    "series_reciprocal",
    "Composita",
    "StirlingTable",
    "closed_composita",
    "closed_source_series",
    "compose_coeffs",
    "composita_add",
    "composita_bruteforce",
    "composita_compose",
    "composita_from_powers",
    "composita_mul_series",
    "composita_scale_arg",
    "composita_scale_const",
    "stirling",
    "stirling_second_explicit",
    "stirling_signed",
    "FAMILY_NAMES",
    "FamilySpec",
    "VerificationVerdict",
    "family_closed",
    "family_gf_expression",
    "family_oracle",
    "family_reference",
    "verify_family",
    "GfAst",
    "GfDomainError",
    "GfSyntaxError",
    "evaluate",
    "parse",
    "pretty",
]
