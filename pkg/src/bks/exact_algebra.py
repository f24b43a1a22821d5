"""Exact arithmetic in Q(v), q = v^2, and in rational functions of the Mellin variable U.

Both :class:`ScalarQV` and :class:`MellinSymbol` are stored as a reduced
fraction of integer polynomials in the ring Z[U, v].  A ScalarQV never
involves U.  Keeping everything in one ring means mixed arithmetic needs no
coercion layer; the price is that "canonical" means canonical in Z[U, v]
(gcd removed, integer content included, sign fixed), which is finer than
canonical in Q(v)(U) and therefore still unique.

String form: ``q`` stands for v^2 and ``q_half`` for v, so odd powers of v
print as ``q_half*q^k``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Integral, Rational

from sympy import ZZ
from sympy.polys.rings import ring

_R, _U, _V = ring("U,v", ZZ)

__all__ = [
    "DivisionByZero",
    "NotExpandable",
    "ParseError",
    "FloorMismatch",
    "ScalarQV",
    "MellinSymbol",
    "parse_expression",
    "scalar",
    "symbol",
    "q_power",
    "v_power",
    "u_monomial",
    "laurent_expand",
    "from_laurent",
]


class DivisionByZero(ZeroDivisionError):
    pass


class NotExpandable(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = f"{message} at column {position + 1} in {text!r}"
        super().__init__(message)


class FloorMismatch(ValueError):
    pass


# -- polynomial helpers -----------------------------------------------------

def _u_order(p):
    return min(m[0] for m in p.monoms())


def _lowest_u_part(p):
    k = _u_order(p)
    return {m: c for m, c in p.terms() if m[0] == k}


def _from_terms(terms):
    p = _R.zero
    for (a, b), c in terms.items():
        if c:
            p += _R({(a, b): c})
    return p


def _canonical(num, den):
    if not den:
        raise DivisionByZero("division by zero")
    if not num:
        return _R.zero, _R.one
    g = num.gcd(den)
    if g != 1:
        num = num.exquo(g)
        den = den.exquo(g)
    # sign: the lowest U-degree part of the denominator has a positive
    # top coefficient in v; for U-free denominators this is the leading coeff
    low = _lowest_u_part(den)
    top = max(low)
    if low[top] < 0:
        num, den = -num, -den
    return num, den


def _lift(x):
    if isinstance(x, _QVFraction):
        return x._num, x._den
    if isinstance(x, Integral):
        return _R(int(x)), _R.one
    if isinstance(x, Rational):
        f = Fraction(x)
        return _R(f.numerator), _R(f.denominator)
    raise TypeError(f"cannot use {type(x).__name__} in exact arithmetic")


# -- printing ---------------------------------------------------------------

def _v_factor(k):
    if k == 0:
        return []
    if k == 1:
        return ["q_half"]
    if k % 2 == 0:
        j = k // 2
        return ["q" if j == 1 else f"q^{j}"]
    j = (k - 1) // 2
    return ["q_half", "q" if j == 1 else f"q^{j}"]


def _u_factor(k):
    if k == 0:
        return []
    return ["U" if k == 1 else f"U^{k}"]


def _term_str(monom, coeff):
    a, b = monom
    factors = _v_factor(b) + _u_factor(a)
    c = int(coeff)
    if not factors:
        return str(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _poly_str(p):
    if not p:
        return "0"
    terms = sorted(p.terms(), key=lambda t: t[0])
    out = ""
    for i, (m, c) in enumerate(terms):
        s = _term_str(m, c)
        if i and not s.startswith("-"):
            out += "+"
        out += s
    return out


def _is_bare_power(p):
    # safe to write after '/' without parentheses
    if len(p.terms()) != 1:
        return False
    (m, c), = p.terms()
    factors = _v_factor(m[1]) + _u_factor(m[0])
    if not factors:
        return c > 0
    return c == 1 and len(factors) == 1


class _QVFraction:
    __slots__ = ("_num", "_den")

    def __init__(self, num=0, den=1):
        n, d = _lift(num)
        if den != 1:
            n2, d2 = _lift(den)
            n, d = n * d2, d * n2
        self._num, self._den = _canonical(n, d)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj._num, obj._den = _canonical(num, den)
        return obj

    @property
    def numerator(self):
        return self._num

    @property
    def denominator(self):
        return self._den

    def is_zero(self):
        return not self._num

    def _wrap(self, other, num, den):
        cls = MellinSymbol if (
            isinstance(self, MellinSymbol) or isinstance(other, MellinSymbol)
        ) else ScalarQV
        if cls is ScalarQV and (num.degree(0) > 0 or den.degree(0) > 0):
            cls = MellinSymbol
        return cls._raw(num, den)

    def __add__(self, other):
        try:
            on, od = _lift(other)
        except TypeError:
            return NotImplemented
        return self._wrap(other, self._num * od + on * self._den, self._den * od)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(-self._num, self._den)

    def __sub__(self, other):
        try:
            on, od = _lift(other)
        except TypeError:
            return NotImplemented
        return self._wrap(other, self._num * od - on * self._den, self._den * od)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            on, od = _lift(other)
        except TypeError:
            return NotImplemented
        return self._wrap(other, self._num * on, self._den * od)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            on, od = _lift(other)
        except TypeError:
            return NotImplemented
        if not on:
            raise DivisionByZero("division by zero")
        return self._wrap(other, self._num * od, self._den * on)

    def __rtruediv__(self, other):
        if not self._num:
            raise DivisionByZero("division by zero")
        on, od = _lift(other)
        return self._wrap(other, on * self._den, od * self._num)

    def __pow__(self, k):
        if not isinstance(k, Integral):
            return NotImplemented
        k = int(k)
        if k < 0:
            if not self._num:
                raise DivisionByZero("zero to a negative power")
            return type(self)._raw(self._den ** -k, self._num ** -k)
        return type(self)._raw(self._num ** k, self._den ** k)

    def __eq__(self, other):
        try:
            on, od = _lift(other)
        except TypeError:
            return NotImplemented
        return self._num * od == on * self._den

    def __hash__(self):
        return hash((str(self._num), str(self._den)))

    def __str__(self):
        num = _poly_str(self._num)
        if self._den == 1:
            return num
        den = _poly_str(self._den)
        if len(self._num.terms()) > 1:
            num = f"({num})"
        if not _is_bare_power(self._den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def evaluate(self, q, U=0, v=None):
        """Numeric value at q (and U); pass v = sqrt(q) to control precision."""
        if v is None:
            v = q ** 0.5
        return _eval_poly(self._num, U, v) / _eval_poly(self._den, U, v)


def _eval_poly(p, U, v):
    total = 0
    for (a, b), c in p.terms():
        total += int(c) * (U ** a) * (v ** b)
    return total


class ScalarQV(_QVFraction):
    """An element of Q(v) with q = v^2."""

    __slots__ = ()

    def __init__(self, num=0, den=1):
        super().__init__(num, den)
        if self._num.degree(0) > 0 or self._den.degree(0) > 0:
            raise ValueError("ScalarQV cannot involve U")

    @classmethod
    def parse(cls, text):
        x = parse_expression(text)
        if isinstance(x, MellinSymbol):
            raise ParseError("scalar expression may not contain U", text, 0)
        return x


class MellinSymbol(_QVFraction):
    """A rational function of U with coefficients in Q(v)."""

    __slots__ = ()

    @property
    def floor(self):
        """Lowest exponent of the Laurent expansion at U = 0."""
        if not self._num:
            raise NotExpandable("the zero symbol has no lowest term")
        return _u_order(self._num) - _u_order(self._den)

    def expect_floor(self, floor):
        if self.floor != floor:
            raise FloorMismatch(f"declared floor {floor}, expansion starts at {self.floor}")
        return self

    def substitute_monomial(self, u_exp, v_exp):
        """Apply U -> U^u_exp * v^v_exp (u_exp = +-1)."""
        if u_exp not in (1, -1):
            raise ValueError("only U -> U^(+-1) * v^k is supported")
        num = {(a * u_exp, b + a * v_exp): c for (a, b), c in self._num.terms()}
        den = {(a * u_exp, b + a * v_exp): c for (a, b), c in self._den.terms()}
        mins = list(num) + list(den)
        shift_u = -min(m[0] for m in mins)
        shift_v = -min(m[1] for m in mins)
        num = {(a + shift_u, b + shift_v): c for (a, b), c in num.items()}
        den = {(a + shift_u, b + shift_v): c for (a, b), c in den.items()}
        return MellinSymbol._raw(_from_terms(num), _from_terms(den))

    @property
    def num_str(self):
        return _poly_str(self._num)

    @property
    def den_str(self):
        return _poly_str(self._den)

    def laurent(self, upto):
        return laurent_expand(self, upto)

    @classmethod
    def parse(cls, text):
        x = parse_expression(text)
        return x if isinstance(x, MellinSymbol) else cls._raw(x._num, x._den)


# -- constructors -----------------------------------------------------------

def scalar(x):
    if isinstance(x, str):
        return ScalarQV.parse(x)
    if isinstance(x, ScalarQV):
        return x
    return ScalarQV(x)


def symbol(x):
    if isinstance(x, str):
        return MellinSymbol.parse(x)
    if isinstance(x, MellinSymbol):
        return x
    n, d = _lift(x)
    return MellinSymbol._raw(n, d)


def v_power(k):
    """v^k as a ScalarQV (k may be negative)."""
    if k >= 0:
        return ScalarQV._raw(_V ** k, _R.one)
    return ScalarQV._raw(_R.one, _V ** -k)


def q_power(k):
    """q^k for integer or half-integer k."""
    k2 = Fraction(k) * 2
    if k2.denominator != 1:
        raise ValueError("q-powers must lie in (1/2)Z")
    return v_power(int(k2))


def u_monomial(u_exp, v_exp=0, coeff=1):
    """coeff * U^u_exp * v^v_exp as a MellinSymbol."""
    n, d = _lift(coeff)
    if u_exp >= 0:
        n = n * _U ** u_exp
    else:
        d = d * _U ** -u_exp
    if v_exp >= 0:
        n = n * _V ** v_exp
    else:
        d = d * _V ** -v_exp
    return MellinSymbol._raw(n, d)


# -- Laurent expansion ------------------------------------------------------

def _u_coefficients(p):
    """Split p in Z[U, v] into {i: coefficient of U^i as a v-polynomial}."""
    out = {}
    for (a, b), c in p.terms():
        out[a] = out.get(a, _R.zero) + _R({(0, b): c})
    return out


def laurent_expand(f, upto):
    """Coefficients (m, c_m) of f = sum c_m U^m for floor <= m <= upto."""
    f = symbol(f)
    if not f._num:
        return []
    k = _u_order(f._den)
    dcoef = _u_coefficients(f._den)
    d0 = dcoef.get(k)
    if d0 is None or not d0:
        raise NotExpandable("denominator vanishes identically at U = 0")
    dcoef = {i - k: c for i, c in dcoef.items()}
    ncoef = _u_coefficients(f._num)
    floor = min(ncoef) - k
    length = upto - floor + 1
    if length <= 0:
        return []
    start = min(ncoef)
    # series of N/D with e_j = P_j / d0^(j+1), all P_j integral
    P = []
    d0pow = [_R.one]
    for _ in range(length + 1):
        d0pow.append(d0pow[-1] * d0)
    out = []
    for j in range(length):
        acc = ncoef.get(start + j, _R.zero) * d0pow[j]
        for i in range(1, j + 1):
            di = dcoef.get(i)
            if di:
                acc -= di * P[j - i] * d0pow[i - 1]
        P.append(acc)
        out.append((floor + j, ScalarQV._raw(acc, d0pow[j + 1])))
    return out


def from_laurent(coeffs):
    """Inverse of laurent_expand for a finite list of (m, c_m)."""
    total = MellinSymbol._raw(_R.zero, _R.one)
    for m, c in coeffs:
        total = total + u_monomial(m) * scalar(c)
    return total


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q_half|q|v|U)|([-+*/^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        x = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return x

    def expr(self):
        x = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self):
        x = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            y = self.unary()
            if op == "*":
                x = x * y
            else:
                try:
                    x = x / y
                except DivisionByZero:
                    self.fail("division by zero")
        return x

    def unary(self):
        t = self.peek()
        if t[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if t[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            k = self.exponent()
            try:
                return base ** k
            except DivisionByZero:
                self.fail("zero to a negative power")
        return base

    def exponent(self):
        t = self.peek()
        sign = 1
        if t[:2] == ("op", "("):
            self.take()
            k = self.exponent()
            if self.take()[:2] != ("op", ")"):
                self.fail("expected ')'")
            return k
        if t[:2] == ("op", "-"):
            self.take()
            sign = -1
            t = self.peek()
        if t[0] != "int":
            self.fail("exponent must be an integer")
        self.take()
        return sign * t[1]

    def atom(self):
        t = self.take()
        kind, val, _ = t
        if kind == "int":
            return ScalarQV._raw(_R(val), _R.one)
        if kind == "name":
            if val == "q":
                return ScalarQV._raw(_V ** 2, _R.one)
            if val in ("q_half", "v"):
                return ScalarQV._raw(_V, _R.one)
            return MellinSymbol._raw(_U, _R.one)
        if (kind, val) == ("op", "("):
            x = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.fail("expected ')'", self.tokens[self.i - 1])
            return x
        self.fail("unexpected token", t)


def parse_expression(text):
    """Parse the canonical string form (also accepts factored input)."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text).parse()
