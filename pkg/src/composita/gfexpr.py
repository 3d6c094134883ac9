"""A small expression language for generating functions over t and x.

Grammar (lowest to highest precedence)::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := atom ('^' exponent)?
    atom     := number | 't' | 'x' | '(' expr ')'
              | 'exp' '(' expr ')' | 'log' '(' expr ')' | '-' atom
    exponent := '-'? integer | '(' expr ')'

Numbers are nonnegative integers; rationals are written with the division
operator (``1/2``), which evaluates exactly.  A parenthesized exponent must
fold to a rational constant or to an expression affine in x (``(x + 1)``,
``(-1/2)``, ``(2*x - 3)``); fractional exponents therefore always carry
parentheses, which avoids any ambiguity between ``^`` and ``/``.  There is
no implicit multiplication.

``parse`` produces an AST, ``pretty`` renders it back to canonical text
(re-parsing yields an equal AST), and ``evaluate`` turns it into an exact
:class:`~composita.series.Series` of a requested order.  Syntax errors and
evaluation-domain errors both carry 1-based character positions.

Division is exact in the series sense: a denominator with zero constant
term is accepted when it has valuation m and the numerator is divisible by
t^m (the subexpressions are re-expanded with enough headroom); anything
else is a domain error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ring import XPoly, rat, rat_to_str
from .series import (
    DomainError,
    Series,
    series_div_t_pow,
    series_exp,
    series_log,
    series_mul,
    series_pow_rat,
    series_reciprocal,
)

__all__ = ["GfSyntaxError", "GfDomainError", "GfAst", "parse", "pretty", "evaluate"]


class GfSyntaxError(ValueError):
    """Unparseable input; ``position`` is the 1-based offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class GfDomainError(DomainError):
    """A series-domain violation, tagged with the subexpression position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


_KINDS = ("const", "t", "x", "add", "sub", "mul", "div", "neg", "exp", "log", "pow")


@dataclass(frozen=True)
class GfAst:
    """One expression node.

    ``value`` holds the rational for ``const`` nodes and the exponent pair
    ``(c0, c1)`` (meaning c0 + c1*x) for ``pow`` nodes.  Source positions
    do not take part in equality.
    """

    kind: str
    children: tuple = ()
    value: object = None
    pos: int = field(default=0, compare=False)


# ---------------------------------------------------------------------------
# Tokenizer / parser


_WORDS = ("t", "x", "exp", "log")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(("num", src[i:j], i + 1))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and src[j].isalpha():
                j += 1
            word = src[i:j]
            if word not in _WORDS:
                raise GfSyntaxError(f"unknown identifier {word!r}", i + 1)
            out.append((word, word, i + 1))
            i = j
            continue
        if ch in "+-*/^()":
            out.append((ch, ch, i + 1))
            i += 1
            continue
        raise GfSyntaxError(f"unexpected character {ch!r}", i + 1)
    out.append(("end", "", n + 1))
    return out


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            raise GfSyntaxError(f"expected {what}", tok[2])
        return self.take()

    def parse(self) -> GfAst:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise GfSyntaxError(f"unexpected {tok[1]!r} after expression", tok[2])
        return node

    def expr(self) -> GfAst:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, pos = self.take()
            rhs = self.term()
            node = GfAst("add" if op == "+" else "sub", (node, rhs), pos=pos)
        return node

    def term(self) -> GfAst:
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            node = GfAst("mul" if op == "*" else "div", (node, rhs), pos=pos)
        return node

    def factor(self) -> GfAst:
        node = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            exponent = self.exponent()
            node = GfAst("pow", (node,), value=exponent, pos=pos)
        return node

    def atom(self) -> GfAst:
        kind, text, pos = self.peek()
        if kind == "num":
            self.take()
            return GfAst("const", value=rat(int(text)), pos=pos)
        if kind in ("t", "x"):
            self.take()
            return GfAst(kind, pos=pos)
        if kind in ("exp", "log"):
            self.take()
            self.expect("(", "'(' after function name")
            inner = self.expr()
            self.expect(")", "closing ')'")
            return GfAst(kind, (inner,), pos=pos)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")", "closing ')'")
            return inner
        if kind == "-":
            self.take()
            return GfAst("neg", (self.atom(),), pos=pos)
        raise GfSyntaxError(
            "expected a number, 't', 'x', '(', 'exp', 'log' or '-'", pos
        )

    def exponent(self) -> tuple:
        kind, text, pos = self.peek()
        if kind == "-":
            self.take()
            _, digits, _ = self.expect("num", "an integer exponent")
            return (rat(-int(digits)), rat(0))
        if kind == "num":
            self.take()
            return (rat(int(text)), rat(0))
        if kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")", "closing ')'")
            affine = _as_affine(inner)
            if affine is None:
                raise GfSyntaxError(
                    "exponent must be a rational constant or affine in x", pos
                )
            return affine
        raise GfSyntaxError("expected an exponent", pos)


def _as_affine(node: GfAst) -> tuple | None:
    """Fold an exponent expression to (c0, c1) meaning c0 + c1*x, or None."""
    k = node.kind
    if k == "const":
        return (node.value, rat(0))
    if k == "x":
        return (rat(0), rat(1))
    if k == "neg":
        inner = _as_affine(node.children[0])
        if inner is None:
            return None
        return (-inner[0], -inner[1])
    if k in ("add", "sub"):
        a = _as_affine(node.children[0])
        b = _as_affine(node.children[1])
        if a is None or b is None:
            return None
        if k == "add":
            return (a[0] + b[0], a[1] + b[1])
        return (a[0] - b[0], a[1] - b[1])
    if k == "mul":
        a = _as_affine(node.children[0])
        b = _as_affine(node.children[1])
        if a is None or b is None or (a[1] != 0 and b[1] != 0):
            return None
        return (a[0] * b[0], a[0] * b[1] + a[1] * b[0])
    if k == "div":
        a = _as_affine(node.children[0])
        b = _as_affine(node.children[1])
        if a is None or b is None or b[1] != 0 or b[0] == 0:
            return None
        return (a[0] / b[0], a[1] / b[0])
    return None


def parse(src: str) -> GfAst:
    """Parse source text into an AST, or raise :class:`GfSyntaxError`."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# Pretty printer


def _exponent_text(value: tuple) -> str:
    c0, c1 = value
    if c1 == 0:
        if c0.denominator == 1:
            return f"^{rat_to_str(c0)}"
        return f"^({rat_to_str(c0)})"
    if c1 == 1:
        head = "x"
    elif c1 == -1:
        head = "-x"
    else:
        head = f"{rat_to_str(c1)}*x"
    if c0 == 0:
        return f"^({head})"
    sign = " + " if c0 > 0 else " - "
    return f"^({head}{sign}{rat_to_str(abs(c0))})"


def _pp(node: GfAst) -> tuple[str, int]:
    """Render a node; returns (text, precedence) with atoms at level 5."""
    k = node.kind
    if k == "const":
        return rat_to_str(node.value), 5
    if k in ("t", "x"):
        return k, 5
    if k in ("exp", "log"):
        inner, _ = _pp(node.children[0])
        return f"{k}({inner})", 5
    if k == "neg":
        body, prec = _pp(node.children[0])
        if prec < 5:
            body = f"({body})"
        return f"-{body}", 3
    if k == "pow":
        base, prec = _pp(node.children[0])
        if prec < 5:
            base = f"({base})"
        return base + _exponent_text(node.value), 4
    if k in ("add", "sub"):
        left, lp = _pp(node.children[0])
        right, rp = _pp(node.children[1])
        if lp < 1:  # pragma: no cover - no lower level exists
            left = f"({left})"
        if rp <= 1:
            right = f"({right})"
        op = " + " if k == "add" else " - "
        return f"{left}{op}{right}", 1
    if k in ("mul", "div"):
        left, lp = _pp(node.children[0])
        right, rp = _pp(node.children[1])
        if lp < 2:
            left = f"({left})"
        if rp <= 2:
            right = f"({right})"
        op = "*" if k == "mul" else "/"
        return f"{left}{op}{right}", 2
    raise ValueError(f"unknown node kind {k!r}")


def pretty(node: GfAst) -> str:
    """Canonical text form; ``parse(pretty(a)) == a`` for every valid a."""
    return _pp(node)[0]


# ---------------------------------------------------------------------------
# Evaluator


def _int_pow(base: Series, e: int, order: int) -> Series:
    out = Series.one(order)
    b = base
    k = e
    while k:
        if k & 1:
            out = series_mul(out, b)
        k >>= 1
        if k:
            b = series_mul(b, b)
    return out


def evaluate(ast: GfAst, order: int, bindings: dict | None = None) -> Series:
    """Expand the expression into an exact series of the given order.

    The grammar has no free parameters beyond t and x, so ``bindings`` is
    accepted only for interface stability and must not name anything else.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if bindings:
        raise ValueError(f"no free parameters to bind, got {sorted(bindings)}")
    return _eval(ast, order)


def _wrap(node: GfAst, func, *args):
    try:
        return func(*args)
    except GfDomainError:
        raise
    except DomainError as exc:
        raise GfDomainError(str(exc), node.pos) from None


def _eval(node: GfAst, order: int) -> Series:
    k = node.kind
    if k == "const":
        return Series(order, (XPoly.constant(node.value),))
    if k == "t":
        return Series.t(order)
    if k == "x":
        return Series(order, (XPoly.x(),))
    if k == "neg":
        return -_eval(node.children[0], order)
    if k in ("add", "sub", "mul"):
        a = _eval(node.children[0], order)
        b = _eval(node.children[1], order)
        if k == "add":
            return a + b
        if k == "sub":
            return a - b
        return series_mul(a, b)
    if k == "div":
        return _eval_div(node, order)
    if k == "exp":
        return _wrap(node, series_exp, _eval(node.children[0], order))
    if k == "log":
        return _wrap(node, series_log, _eval(node.children[0], order))
    if k == "pow":
        return _eval_pow(node, order)
    raise ValueError(f"unknown node kind {k!r}")


def _eval_div(node: GfAst, order: int) -> Series:
    num_node, den_node = node.children
    den = _eval(den_node, order)
    c0 = den.constant_term()
    if c0.is_constant() and not c0.is_zero():
        return series_mul(_eval(num_node, order), series_reciprocal(den))
    if not c0.is_zero():
        raise GfDomainError(
            f"cannot invert a constant term containing x ({c0})", node.pos
        )
    m = den.valuation()
    if m is None:
        raise GfDomainError("division by the zero series", node.pos)
    num_wide = _eval(num_node, order + m)
    den_wide = _eval(den_node, order + m)
    den_unit = series_div_t_pow(den_wide, m)
    num_shifted = _wrap(node, series_div_t_pow, num_wide, m)
    return series_mul(num_shifted, _wrap(node, series_reciprocal, den_unit))


def _eval_pow(node: GfAst, order: int) -> Series:
    c0, c1 = node.value
    base = _eval(node.children[0], order)
    if c1 == 0:
        if c0.denominator == 1:
            e = int(c0)
            if e >= 0:
                return _int_pow(base, e, order)
            inv = _wrap(node, series_reciprocal, base)
            return _int_pow(inv, -e, order)
        return _wrap(node, series_pow_rat, base, c0)
    log_base = _wrap(node, series_log, base)
    return series_exp(log_base.scale(XPoly((c0, c1))))
