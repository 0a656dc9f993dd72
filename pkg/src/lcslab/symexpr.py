"""Exact scalar arithmetic in the rational-function field Q(x1..xn).

An Expr is a quotient of integer-coefficient multivariate polynomials kept
in a unique canonical form: numerator and denominator coprime (polynomial
GCD 1, integer content included), denominator leading coefficient positive
under graded-lex order, terms stored sorted.  Two Exprs are equal exactly
when their stored forms are identical, so equality is field equality and
zero-testing is decidable.

Equality is equality of rational functions, not of pointwise values: the
domain restrictions implied by denominators (z != 0 and so on) are carried
implicitly, never enforced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import polyops as P


class ExprError(Exception):
    """Base class for scalar-arithmetic errors."""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(ExprError):
    def __init__(self, name: str, position: int | None = None):
        at = f" (at position {position})" if position is not None else ""
        super().__init__(f"unknown variable {name!r}{at}")
        self.name = name
        self.position = position


class ExprDivisionError(ExprError):
    """Division by the zero element of the function field."""


class PoleError(ExprError):
    """Evaluation point lies on the zero set of a denominator."""


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


class Expr:
    """Canonical rational function over a fixed ordered variable tuple."""

    __slots__ = ("vars", "num", "den")

    def __init__(self, variables, num, den):
        variables = tuple(variables)
        if not den:
            raise ExprDivisionError("division by zero expression")
        if not num:
            num, den = {}, P.poly_const(len(variables), 1)
        else:
            g = P.poly_gcd(num, den)
            num = P.poly_divexact(num, g)
            den = P.poly_divexact(den, g)
            if P.poly_lead(den)[1] < 0:
                num = P.poly_neg(num)
                den = P.poly_neg(den)
        self.vars = variables
        self.num = P.poly_sorted_terms(num)
        self.den = P.poly_sorted_terms(den)

    # -- constructors ---------------------------------------------------

    @classmethod
    def _raw(cls, variables, num, den) -> "Expr":
        """Wrap an already-canonical fraction without re-reducing it.

        Caller must guarantee coprimality and a positive denominator lead;
        used on the arithmetic fast paths where both are provable.
        """
        self = cls.__new__(cls)
        self.vars = variables
        self.num = P.poly_sorted_terms(num)
        self.den = P.poly_sorted_terms(den)
        return self

    @classmethod
    def zero(cls, variables) -> "Expr":
        return cls.constant(variables, 0)

    @classmethod
    def one(cls, variables) -> "Expr":
        return cls.constant(variables, 1)

    @classmethod
    def constant(cls, variables, value) -> "Expr":
        variables = tuple(variables)
        q = Fraction(value)
        n = len(variables)
        return cls(variables, P.poly_const(n, q.numerator), P.poly_const(n, q.denominator))

    @classmethod
    def variable(cls, variables, v: Var) -> "Expr":
        variables = tuple(variables)
        try:
            i = variables.index(v)
        except ValueError:
            raise UnknownVariableError(v.name) from None
        return cls(variables, P.poly_var(len(variables), i), P.poly_const(len(variables), 1))

    # -- canonical-form identity ----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self.vars == other.vars and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.vars, self.num, self.den))

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_constant(self) -> bool:
        return (not self.num or sum(self.num[0][0]) == 0) and sum(self.den[0][0]) == 0

    def as_fraction(self) -> Fraction:
        """The value of a constant Expr as an exact rational."""
        if not self.is_constant:
            raise ExprError(f"not a constant: {self}")
        num = self.num[0][1] if self.num else 0
        return Fraction(num, self.den[0][1])

    @property
    def size(self) -> int:
        """Term count of the stored form; used for pivot preferences."""
        return len(self.num) + len(self.den)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Expr":
        if isinstance(other, Expr):
            if other.vars != self.vars:
                raise ExprError("mixed variable contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return Expr.constant(self.vars, other)
        return NotImplemented

    def _add_sub(self, o: "Expr", sub: bool) -> "Expr":
        an, ad = dict(self.num), dict(self.den)
        bn, bd = dict(o.num), dict(o.den)
        combine = P.poly_sub if sub else P.poly_add
        d = P.poly_gcd(ad, bd)
        exps, coeff = P.poly_lead(d)
        if coeff == 1 and not any(exps):
            # coprime denominators: the cross-sum is already in lowest terms
            num = combine(P.poly_mul(an, bd), P.poly_mul(bn, ad))
            if not num:
                return Expr.zero(self.vars)
            return Expr._raw(self.vars, num, P.poly_mul(ad, bd))
        ad_red = P.poly_divexact(ad, d)
        bd_red = P.poly_divexact(bd, d)
        num = combine(P.poly_mul(an, bd_red), P.poly_mul(bn, ad_red))
        return Expr(self.vars, num, P.poly_mul(ad, bd_red))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._add_sub(o, sub=False)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._add_sub(o, sub=True)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        an, ad = dict(self.num), dict(self.den)
        bn, bd = dict(o.num), dict(o.den)
        if not an or not bn:
            return Expr.zero(self.vars)
        # cross-cancel; the remaining pieces are pairwise coprime
        g1 = P.poly_gcd(an, bd)
        g2 = P.poly_gcd(bn, ad)
        num = P.poly_mul(P.poly_divexact(an, g1), P.poly_divexact(bn, g2))
        den = P.poly_mul(P.poly_divexact(ad, g2), P.poly_divexact(bd, g1))
        return Expr._raw(self.vars, num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero:
            raise ExprDivisionError("division by zero expression")
        if self.is_zero:
            return Expr.zero(self.vars)
        an, ad = dict(self.num), dict(self.den)
        bn, bd = dict(o.num), dict(o.den)
        g1 = P.poly_gcd(an, bn)
        g2 = P.poly_gcd(bd, ad)
        num = P.poly_mul(P.poly_divexact(an, g1), P.poly_divexact(bd, g2))
        den = P.poly_mul(P.poly_divexact(ad, g2), P.poly_divexact(bn, g1))
        if P.poly_lead(den)[1] < 0:
            num = P.poly_neg(num)
            den = P.poly_neg(den)
        return Expr._raw(self.vars, num, den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return Expr._raw(self.vars, P.poly_neg(dict(self.num)), dict(self.den))

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ExprError("exponent must be an integer")
        if k < 0:
            if self.is_zero:
                raise ExprDivisionError("zero expression raised to a negative power")
            base_num, base_den = dict(self.den), dict(self.num)
            k = -k
        else:
            base_num, base_den = dict(self.num), dict(self.den)
        n = len(self.vars)
        num = P.poly_pow(base_num, k, n)
        den = P.poly_pow(base_den, k, n)
        if not num:
            return Expr.zero(self.vars)
        if P.poly_lead(den)[1] < 0:
            num = P.poly_neg(num)
            den = P.poly_neg(den)
        return Expr._raw(self.vars, num, den)

    # -- calculus and evaluation ------------------------------------------

    def diff(self, v: Var) -> "Expr":
        try:
            i = self.vars.index(v)
        except ValueError:
            raise UnknownVariableError(v.name) from None
        num, den = dict(self.num), dict(self.den)
        dn = P.poly_sub(P.poly_mul(P.poly_diff(num, i), den), P.poly_mul(num, P.poly_diff(den, i)))
        return Expr(self.vars, dn, P.poly_mul(den, den))

    def eval(self, point) -> Fraction:
        values = _point_values(self.vars, point)
        den = P.poly_eval(dict(self.den), values)
        if den == 0:
            raise PoleError(f"denominator of {self} vanishes at {point}")
        return P.poly_eval(dict(self.num), values) / den

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.num:
            return "0"
        if len(self.den) == 1 and self.den[0] == ((0,) * len(self.vars), 1):
            return _format_poly(self.num, self.vars)
        ns = _format_poly(self.num, self.vars)
        if len(self.num) > 1:
            ns = f"({ns})"
        ds = _format_poly(self.den, self.vars)
        if not _single_factor(self.den):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"Expr({str(self)!r})"


def _point_values(variables, point) -> tuple:
    named = {}
    for key, value in point.items():
        name = key.name if isinstance(key, Var) else str(key)
        named[name] = Fraction(value)
    values = []
    for v in variables:
        if v.name not in named:
            raise ExprError(f"no value given for variable {v.name!r}")
        values.append(named[v.name])
    extra = set(named) - {v.name for v in variables}
    if extra:
        raise UnknownVariableError(sorted(extra)[0])
    return tuple(values)


def _format_term(c_abs: int, exps, variables) -> str:
    factors = []
    if c_abs != 1 or not any(exps):
        factors.append(str(c_abs))
    for v, k in zip(variables, exps):
        if k == 1:
            factors.append(v.name)
        elif k > 1:
            factors.append(f"{v.name}^{k}")
    return "*".join(factors)


def _format_poly(terms, variables) -> str:
    parts = []
    for i, (exps, c) in enumerate(terms):
        body = _format_term(abs(c), exps, variables)
        if i == 0:
            if c < 0:
                # "-x^2" would parse as (-x)^2 under the grammar; force "-1*x^2"
                first = next((k for k in exps if k), 0)
                if abs(c) == 1 and any(exps) and first >= 2:
                    body = "1*" + body
                parts.append("-" + body)
            else:
                parts.append(body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def _single_factor(terms) -> bool:
    """True when the one-term polynomial prints as a single grammar factor."""
    if len(terms) != 1:
        return False
    exps, c = terms[0]
    nz = [k for k in exps if k]
    if not nz:
        return True  # positive integer literal
    return c == 1 and len(nz) == 1


# -- parser ---------------------------------------------------------------
#
# expr   := term (('+'|'-') term)*
# term   := factor (('*'|'/') factor)*
# factor := base ('^' int)?          (the exponent may be negative)
# base   := int | var | '(' expr ')' | '-' base


class _Parser:
    def __init__(self, text: str, variables):
        self.text = text
        self.pos = 0
        self.variables = tuple(variables)
        self.index = {v.name: v for v in self.variables}

    def parse(self) -> Expr:
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise ExprSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return e

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Expr:
        e = self.term()
        while (op := self.peek()) in "+-" and op:
            self.pos += 1
            t = self.term()
            e = e + t if op == "+" else e - t
        return e

    def term(self) -> Expr:
        e = self.factor()
        while (op := self.peek()) in "*/" and op:
            self.pos += 1
            at = self.pos
            f = self.factor()
            if op == "*":
                e = e * f
            else:
                if f.is_zero:
                    raise ExprDivisionError(f"division by zero (at position {at})")
                e = e / f
        return e

    def factor(self) -> Expr:
        e = self.base()
        if self.peek() == "^":
            self.pos += 1
            at = self.pos
            k = self.integer()
            if k < 0 and e.is_zero:
                raise ExprDivisionError(f"zero raised to a negative power (at position {at})")
            e = e**k
        return e

    def base(self) -> Expr:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.base()
        if ch == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                raise ExprSyntaxError("expected ')'", self.pos)
            self.pos += 1
            return e
        if ch.isdigit():
            return Expr.constant(self.variables, self.natural())
        if ch.isalpha():
            at = self.pos
            name = self.name()
            v = self.index.get(name)
            if v is None:
                raise UnknownVariableError(name, at)
            return Expr.variable(self.variables, v)
        raise ExprSyntaxError("expected a number, variable, '(' or '-'", self.pos)

    def integer(self) -> int:
        self.skip_ws()
        sign = 1
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            sign = -1
            self.pos += 1
        return sign * self.natural()

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ExprSyntaxError("expected an integer", self.pos)
        return int(self.text[start : self.pos])

    def name(self) -> str:
        start = self.pos
        self.pos += 1
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start : self.pos]


# -- module-level operation surface ----------------------------------------


def parse(text: str, variables) -> Expr:
    """Parse an arithmetic expression over the given variables."""
    return _Parser(text, variables).parse()


def print_expr(e: Expr) -> str:
    """Canonical text form; parse(print_expr(e)) == e."""
    return str(e)


def arith(kind: str, a: Expr, b=None) -> Expr:
    """Dispatch one exact field operation by name."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "neg":
        return -a
    if kind == "pow":
        return a**b
    raise ValueError(f"unknown operation {kind!r}")


def diff(e: Expr, v: Var) -> Expr:
    return e.diff(v)


def is_zero(e: Expr) -> bool:
    return e.is_zero


def eval_at(e: Expr, point) -> Fraction:
    return e.eval(point)
