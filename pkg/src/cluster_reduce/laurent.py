"""Exact multivariate Laurent polynomial and rational function arithmetic.

Coefficients are rationals (`fractions.Fraction`), exponents arbitrary
integers.  A rational function is always held in a canonical normal
form: numerator and denominator are true polynomials with no common
factor, and the denominator has integer coefficients with content 1 and
positive leading coefficient (lexicographic order).  Because the form is
canonical, equality of values is equality of representations, which is
what lets the geometry layer certify identities symbolically.

The multivariate gcd is the classic primitive polynomial remainder
sequence: recurse on the contents one variable at a time and run a
pseudo-division Euclid in the main variable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "poly_gcd",
    "parse_rational",
    "format_rational",
]


def _add_exp(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """A Laurent polynomial stored as {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c == 0:
                    continue
                e = tuple(int(x) for x in exp)
                if len(e) != nvars:
                    raise ValueError("exponent tuple has wrong length")
                clean[e] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(c, nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(i: int, nvars: int) -> "LaurentPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = tuple(int(j == i) for j in range(nvars))
        return LaurentPoly(nvars, {exp: Fraction(1)})

    @staticmethod
    def monomial(exp, nvars: int, coeff=1) -> "LaurentPoly":
        return LaurentPoly(nvars, {tuple(int(x) for x in exp): Fraction(coeff)})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: Fraction(1)}

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_polynomial(self) -> bool:
        return all(all(x >= 0 for x in e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- ring operations ----------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                s = out.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return LaurentPoly(self.nvars)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = {e: k * c for e, k in self.terms.items()}
        return res

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if self.is_monomial():
                (e, c), = self.terms.items()
                return LaurentPoly(self.nvars, {tuple(n * x for x in e): Fraction(1) / c ** (-n)})
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial x^exp."""
        e0 = tuple(int(x) for x in exp)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = {_add_exp(e, e0): c for e, c in self.terms.items()}
        return res

    # -- calculus -----------------------------------------------------

    def derivative(self, var: int) -> "LaurentPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            e2 = tuple(x - 1 if j == var else x for j, x in enumerate(e))
            s = out.get(e2, Fraction(0)) + c * k
            if s:
                out[e2] = s
            else:
                out.pop(e2, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    # -- evaluation ---------------------------------------------------

    def evaluate(self, point) -> Fraction:
        vals = [Fraction(x) for x in point]
        if len(vals) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(vals, e):
                if k == 0:
                    continue
                if x == 0 and k < 0:
                    raise ZeroDivisionError("negative power of zero coordinate")
                term *= x ** k
            total += term
        return total

    def evaluate_mp(self, point):
        """Evaluate at a point of mpmath numbers (uses the caller's precision)."""
        import mpmath

        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = mpmath.mpf(0)
        for e, c in self.terms.items():
            term = mpmath.mpf(c.numerator) / c.denominator
            for x, k in zip(point, e):
                if k:
                    term *= mpmath.power(x, k)
            total += term
        return total

    # -- support queries ----------------------------------------------

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        return tuple(min(e[j] for e in self.terms) for j in range(self.nvars))

    def degree(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def leading_exponent(self) -> tuple[int, ...]:
        return max(self.terms)  # lexicographic on exponent tuples

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_exponent()]

    def content(self) -> Fraction:
        """Rational content carrying the sign of the leading coefficient."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        cont = Fraction(num, den)
        if self.leading_coefficient() < 0:
            cont = -cont
        return cont

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self.terms!r})"


# ---------------------------------------------------------------------------
# Polynomial gcd (primitive PRS)
# ---------------------------------------------------------------------------


def _exact_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact division of polynomials; raises ArithmeticError if not exact."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = f.nvars
    quo: dict[tuple[int, ...], Fraction] = {}
    rem = f
    g_lead = g.leading_exponent()
    g_lc = g.terms[g_lead]
    while not rem.is_zero():
        lead = rem.leading_exponent()
        diff = _sub_exp(lead, g_lead)
        if any(x < 0 for x in diff):
            raise ArithmeticError("polynomial division is not exact")
        c = rem.terms[lead] / g_lc
        quo[diff] = c
        rem = rem - g.shift(diff).scale(c)
    res = LaurentPoly.__new__(LaurentPoly)
    res.nvars = n
    res.terms = quo
    return res


def _coefficients_in(f: LaurentPoly, var: int) -> dict[int, LaurentPoly]:
    """Group terms by the exponent of one variable.

    Coefficient polynomials stay in the full variable space with a zero
    exponent in `var`.
    """
    out: dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[var]
        e2 = tuple(0 if j == var else x for j, x in enumerate(e))
        out.setdefault(k, {})[e2] = c
    result = {}
    for k, terms in out.items():
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars = f.nvars
        p.terms = terms
        result[k] = p
    return result


def _from_coefficients(coeffs: dict[int, LaurentPoly], var: int, nvars: int) -> LaurentPoly:
    terms: dict[tuple[int, ...], Fraction] = {}
    for k, p in coeffs.items():
        for e, c in p.terms.items():
            e2 = tuple(k if j == var else x for j, x in enumerate(e))
            terms[e2] = c
    res = LaurentPoly.__new__(LaurentPoly)
    res.nvars = nvars
    res.terms = terms
    return res


def _normalize_primitive(f: LaurentPoly) -> LaurentPoly:
    """Divide by the rational content: integer coefficients, gcd 1, lead > 0."""
    cont = f.content()
    if cont in (0, 1):
        return f
    return f.scale(Fraction(1) / cont)


def _poly_content_in(f: LaurentPoly, var: int) -> LaurentPoly:
    coeffs = _coefficients_in(f, var)
    it = iter(coeffs.values())
    acc = next(it)
    for p in it:
        if acc.is_constant():
            break
        acc = poly_gcd(acc, p)
    if acc.is_constant():
        return LaurentPoly.constant(1, f.nvars)
    return acc


def _pseudo_remainder(f: LaurentPoly, g: LaurentPoly, var: int) -> LaurentPoly:
    """prem(f, g) in `var`: lc(g)^(df-dg+1) * f reduced modulo g."""
    df = f.degree(var)
    dg = g.degree(var)
    g_coeffs = _coefficients_in(g, var)
    lc_g = g_coeffs[dg]
    rem = f
    for k in range(df, dg - 1, -1):
        rem_coeffs = _coefficients_in(rem, var)
        lead = rem_coeffs.get(k)
        rem = rem * lc_g
        if lead is None or lead.is_zero():
            continue
        shift_exp = tuple(k - dg if j == var else 0 for j in range(f.nvars))
        rem = rem - (g * lead).shift(shift_exp)
    return rem


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Primitive gcd of two polynomials (non-negative exponents).

    The result has integer coefficients with content 1 and positive
    leading coefficient; constants collapse to 1.
    """
    if f.nvars != g.nvars:
        raise ValueError("variable count mismatch")
    if f.is_zero():
        return _normalize_primitive(g)
    if g.is_zero():
        return _normalize_primitive(f)
    if not (f.is_polynomial() and g.is_polynomial()):
        raise ValueError("gcd requires true polynomials")

    n = f.nvars
    mf = f.min_exponents()
    mg = g.min_exponents()
    common = tuple(min(a, b) for a, b in zip(mf, mg))
    f1 = f.shift(tuple(-x for x in mf))
    g1 = g.shift(tuple(-x for x in mg))

    core = _poly_gcd_core(f1, g1)
    if any(common):
        core = core.shift(common)
    return core


def _poly_gcd_core(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    n = f.nvars
    var = None
    for v in range(n - 1, -1, -1):
        if f.degree(v) > 0 or g.degree(v) > 0:
            var = v
            break
    if var is None:
        return LaurentPoly.constant(1, n)

    if f.degree(var) == 0 or g.degree(var) == 0:
        # one argument is free of the main variable: gcd divides its
        # content in that variable
        free = f if f.degree(var) == 0 else g
        other = g if f.degree(var) == 0 else f
        return _poly_gcd_core(free, _poly_content_in(other, var))

    cont_f = _poly_content_in(f, var)
    cont_g = _poly_content_in(g, var)
    pp_f = _exact_divide(f, cont_f) if not cont_f.is_one() else f
    pp_g = _exact_divide(g, cont_g) if not cont_g.is_one() else g

    a, b = pp_f, pp_g
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while True:
        r = _pseudo_remainder(a, b, var)
        if r.is_zero():
            h = b
            break
        if r.degree(var) == 0:
            h = None
            break
        cont_r = _poly_content_in(r, var)
        r = _exact_divide(r, cont_r) if not cont_r.is_one() else r
        a, b = b, _normalize_primitive(r)

    cont_gcd = poly_gcd(cont_f, cont_g)
    if h is None:
        return _normalize_primitive(cont_gcd)
    h = _exact_divide(h, _poly_content_in(h, var)) if not _poly_content_in(h, var).is_one() else h
    result = _normalize_primitive(h)
    if not cont_gcd.is_one():
        result = result * cont_gcd
    return result


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient of Laurent polynomials kept in canonical normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.constant(1, num.nvars)
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normal_form(num, den)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(c, nvars: int) -> "RationalFunction":
        return RationalFunction._raw(
            LaurentPoly.constant(c, nvars), LaurentPoly.constant(1, nvars)
        )

    @staticmethod
    def coordinate(i: int, nvars: int) -> "RationalFunction":
        return RationalFunction._raw(
            LaurentPoly.variable(i, nvars), LaurentPoly.constant(1, nvars)
        )

    @staticmethod
    def monomial(exp, nvars: int) -> "RationalFunction":
        e = tuple(int(x) for x in exp)
        num_exp = tuple(max(x, 0) for x in e)
        den_exp = tuple(max(-x, 0) for x in e)
        return RationalFunction._raw(
            LaurentPoly.monomial(num_exp, nvars), LaurentPoly.monomial(den_exp, nvars)
        )

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RationalFunction":
        return RationalFunction(p)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_coordinate(self, i: int) -> bool:
        return self.den.is_one() and self.num == LaurentPoly.variable(i, self.nvars)

    def is_laurent_monomial(self) -> bool:
        return self.num.is_monomial() and self.den.is_monomial()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    # -- field operations ---------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        # cross-cancel before multiplying to keep the gcd calls small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        a = self.num if g1.is_one() else _exact_divide(self.num, g1)
        d = other.den if g1.is_one() else _exact_divide(other.den, g1)
        c = other.num if g2.is_one() else _exact_divide(other.num, g2)
        b = self.den if g2.is_one() else _exact_divide(self.den, g2)
        return RationalFunction(a * c, b * d)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n == 0:
            return RationalFunction.constant(1, self.nvars)
        base = self if n > 0 else self.inverse()
        k = abs(n)
        # numerator and denominator are coprime, so powers stay coprime
        num = base.num ** k
        den = base.den ** k
        return RationalFunction._raw(num, den)

    # -- calculus -----------------------------------------------------

    def derivative(self, var: int) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative(var) * self.den - self.num * self.den.derivative(var),
            self.den * self.den,
        )

    # -- evaluation and composition -----------------------------------

    def evaluate(self, point) -> Fraction:
        den = self.den.evaluate(point)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / den

    def evaluate_mp(self, point):
        den = self.den.evaluate_mp(point)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate_mp(point) / den

    def compose(self, args: "list[RationalFunction]") -> "RationalFunction":
        """Substitute args[i] for variable i; args live in their own space."""
        if len(args) != self.nvars:
            raise ValueError("wrong number of substitution arguments")
        num_c = _compose_laurent(self.num, args)
        den_c = _compose_laurent(self.den, args)
        return num_c / den_c

    def __repr__(self) -> str:
        return f"RationalFunction({format_rational(self)!r})"


def _normal_form(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    n = num.nvars
    one = LaurentPoly.constant(1, n)
    if num.is_zero():
        return LaurentPoly(n), one

    # clear negative exponents with one common monomial
    mins = [0] * n
    for e in list(num.terms) + list(den.terms):
        for j, x in enumerate(e):
            if x < mins[j]:
                mins[j] = x
    if any(mins):
        shift = tuple(-x for x in mins)
        num = num.shift(shift)
        den = den.shift(shift)

    g = poly_gcd(num, den)
    if not g.is_one():
        num = _exact_divide(num, g)
        den = _exact_divide(den, g)

    cont = den.content()
    if cont != 1:
        inv = Fraction(1) / cont
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def _compose_laurent(p: LaurentPoly, args: list[RationalFunction]) -> RationalFunction:
    """Substitute rational functions into a Laurent polynomial.

    Builds the result over a single common denominator to avoid one
    normal-form pass per term.
    """
    if not args:
        raise ValueError("composition needs at least one argument")
    m = args[0].nvars
    for a in args:
        if a.nvars != m:
            raise ValueError("substitution arguments live in different spaces")
    if p.is_zero():
        return RationalFunction.constant(0, m)

    lo = [min(e[i] for e in p.terms) for i in range(p.nvars)]
    hi = [max(e[i] for e in p.terms) for i in range(p.nvars)]

    # cache powers of numerators and denominators of each argument
    num_pow: list[dict[int, LaurentPoly]] = [{} for _ in args]
    den_pow: list[dict[int, LaurentPoly]] = [{} for _ in args]

    def npow(i: int, k: int) -> LaurentPoly:
        d = num_pow[i]
        if k not in d:
            d[k] = args[i].num ** k
        return d[k]

    def dpow(i: int, k: int) -> LaurentPoly:
        d = den_pow[i]
        if k not in d:
            d[k] = args[i].den ** k
        return d[k]

    # common denominator: prod num_i^(-lo_i if lo_i<0) * den_i^(hi_i if hi_i>0)
    total_num = LaurentPoly(m)
    for e, c in p.terms.items():
        term = LaurentPoly.constant(c, m)
        for i, k in enumerate(e):
            if k > 0:
                term = term * npow(i, k)
            if k < 0:
                term = term * dpow(i, -k)
            # pad up to the common denominator
            pad_num = (-lo[i] if lo[i] < 0 else 0) - (-k if k < 0 else 0)
            pad_den = (hi[i] if hi[i] > 0 else 0) - (k if k > 0 else 0)
            if pad_num > 0:
                term = term * npow(i, pad_num)
            if pad_den > 0:
                term = term * dpow(i, pad_den)
        total_num = total_num + term

    common_den = LaurentPoly.constant(1, m)
    for i in range(p.nvars):
        if lo[i] < 0:
            common_den = common_den * npow(i, -lo[i])
        if hi[i] > 0:
            common_den = common_den * dpow(i, hi[i])
    return RationalFunction(total_num, common_den)


# ---------------------------------------------------------------------------
# Parsing and canonical serialization
# ---------------------------------------------------------------------------


class _Parser:
    """Recursive-descent parser for rational function strings.

    Accepts `+ - * / ^`, integer constants, parentheses, and variables of
    the form <letters><index> with 1-based indices, e.g. ``x1`` or ``y3``.
    """

    def __init__(self, text: str):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.max_index = 0

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, str]]:
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*/^()":
                tokens.append((ch, ch))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("int", text[i:j]))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(text) and text[j].isalpha():
                    j += 1
                k = j
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k == j:
                    raise ValueError(f"variable name without index near {text[i:k+8]!r}")
                tokens.append(("var", text[j:k]))
                i = k
                continue
            raise ValueError(f"unexpected character {ch!r}")
        tokens.append(("end", ""))
        return tokens

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def take(self, kind: str) -> str:
        tk, value = self.tokens[self.pos]
        if tk != kind:
            raise ValueError(f"expected {kind}, found {value!r}")
        self.pos += 1
        return value

    def parse(self, nvars: int | None):
        # first pass records the largest variable index when nvars is None
        save = self.pos
        self._scan_vars()
        n = nvars if nvars is not None else self.max_index
        if n == 0:
            n = 1  # constants still need an ambient space
        self.pos = save
        expr = self.expr(n)
        self.take("end")
        return expr

    def _scan_vars(self) -> None:
        for kind, value in self.tokens:
            if kind == "var":
                self.max_index = max(self.max_index, int(value))

    def expr(self, n: int):
        sign = 1
        if self.peek() in ("+", "-"):
            if self.take(self.peek()) == "-":
                sign = -1
        value = self.term(n)
        if sign < 0:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            rhs = self.term(n)
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self, n: int):
        value = self.factor(n)
        while self.peek() in ("*", "/"):
            op = self.take(self.peek())
            rhs = self.factor(n)
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self, n: int):
        if self.peek() == "-":
            self.take("-")
            return -self.factor(n)
        base = self.atom(n)
        if self.peek() == "^":
            self.take("^")
            neg = False
            if self.peek() == "-":
                self.take("-")
                neg = True
            k = int(self.take("int"))
            base = base ** (-k if neg else k)
        return base

    def atom(self, n: int):
        kind = self.peek()
        if kind == "(":
            self.take("(")
            value = self.expr(n)
            self.take(")")
            return value
        if kind == "int":
            return RationalFunction.constant(int(self.take("int")), n)
        if kind == "var":
            idx = int(self.take("var"))
            if idx < 1 or idx > n:
                raise ValueError(f"variable index {idx} out of range 1..{n}")
            return RationalFunction.coordinate(idx - 1, n)
        raise ValueError(f"unexpected token in expression: {self.tokens[self.pos][1]!r}")


def parse_rational(text: str, nvars: int | None = None) -> RationalFunction:
    """Parse a rational function string such as ``(x2*x5 + x3*x4)/x1``."""
    return _Parser(text).parse(nvars)


def _format_term(exp: tuple[int, ...], coeff: Fraction, names: list[str]) -> str:
    factors = []
    for name, k in zip(names, exp):
        if k == 0:
            continue
        factors.append(name if k == 1 else f"{name}^{k}")
    c = abs(coeff)
    if not factors:
        return str(c)
    if c == 1:
        return "*".join(factors)
    return "*".join([str(c)] + factors)


def _format_poly(p: LaurentPoly, names: list[str]) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exp in sorted(p.terms, reverse=True):
        coeff = p.terms[exp]
        term = _format_term(exp, coeff, names)
        if not parts:
            parts.append(term if coeff > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if coeff > 0 else f"- {term}")
    return " ".join(parts)


def _needs_parens_as_denominator(p: LaurentPoly) -> bool:
    if len(p.terms) != 1:
        return True
    (exp, coeff), = p.terms.items()
    if coeff != 1:
        return True
    return sum(1 for k in exp if k != 0) != 1


def format_rational(f: RationalFunction, names: list[str] | None = None) -> str:
    """Canonical string form; round-trips through parse_rational."""
    if names is None:
        names = [f"x{i+1}" for i in range(f.nvars)]
    num_str = _format_poly(f.num, names)
    if f.den.is_one():
        return num_str
    if len(f.num.terms) > 1 or num_str.startswith("-"):
        num_str = f"({num_str})"
    den_str = _format_poly(f.den, names)
    if _needs_parens_as_denominator(f.den):
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"
