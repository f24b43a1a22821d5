"""Right Sp_2n(O)-invariant Schwartz functions on X(F) = [P,P]\\Sp_2n(F), F non-Archimedean.

A K0-invariant function is determined by its values on the cosets
[P,P] c(varpi) K0, so it is stored as coefficients c_m of the indicators
1_m.  Its Mellin transform on the unramified line is the Laurent series
sum c_m U^m, because the transform of 1_m is exactly U^m times the
normalized spherical section (unramified measures, |d| = 1).

Ramified characters see nothing of a K0-invariant function, so the Fourier
transform acts on Mellin symbols by

    F(f)(U) = f(U^-1 q^-(n+1)) * d(s, chi) / d(-s, chi-bar).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exact_algebra import (
    FloorMismatch,
    MellinSymbol,
    ParseError,
    ScalarQV,
    from_laurent,
    laurent_expand,
    parse_expression,
    q_power,
    scalar,
    symbol,
    u_monomial,
)
from .plucker_geometry import coset_index
from .weyl_lfactors import d_factor, fourier_multiplier, reflect_symbol


class SchemaError(ValueError):
    pass


_ZERO = scalar(0)


@dataclass(frozen=True, eq=False)
class CoefficientFunction:
    """sum_m c_m 1_m, either as a finite list or through its Mellin symbol.

    For ``kind == "finite"``, ``coeffs[i]`` is c_{floor + i}.  For
    ``kind == "rational"`` the coefficients are those of the Laurent
    expansion of ``symbol`` at U = 0.
    """

    n: int
    kind: str
    floor: int
    coeffs: tuple = ()
    symbol: MellinSymbol | None = field(default=None)

    def __post_init__(self):
        if self.kind not in ("finite", "rational"):
            raise SchemaError(f"unknown kind {self.kind!r}")
        if self.n < 1:
            raise SchemaError("rank must be positive")
        if self.kind == "rational" and self.symbol is None:
            raise SchemaError("rational form needs a symbol")

    # -- constructors --

    @classmethod
    def finite(cls, n, coeffs, floor=0):
        """From a list starting at ``floor`` or a dict {m: c_m}."""
        if isinstance(coeffs, dict):
            items = {m: scalar(c) for m, c in coeffs.items()}
        else:
            items = {floor + i: scalar(c) for i, c in enumerate(coeffs)}
        items = {m: c for m, c in items.items() if not c.is_zero()}
        if not items:
            return cls(n, "finite", 0, ())
        lo, hi = min(items), max(items)
        return cls(n, "finite", lo, tuple(items.get(m, _ZERO) for m in range(lo, hi + 1)))

    @classmethod
    def rational(cls, n, sym):
        sym = symbol(sym)
        floor = 0 if sym.is_zero() else sym.floor
        return cls(n, "rational", floor, (), sym)

    # -- views --

    def mellin(self) -> MellinSymbol:
        if self.kind == "rational":
            return self.symbol
        return from_laurent((self.floor + i, c) for i, c in enumerate(self.coeffs))

    def coefficients(self, upto):
        """[(m, c_m)] for floor <= m <= upto."""
        if self.kind == "finite":
            return [(self.floor + i, c) for i, c in enumerate(self.coeffs)
                    if self.floor + i <= upto]
        return laurent_expand(self.symbol, upto)

    def coefficient(self, m):
        if m < self.floor:
            return _ZERO
        if self.kind == "finite":
            i = m - self.floor
            return self.coeffs[i] if i < len(self.coeffs) else _ZERO
        return laurent_expand(self.symbol, m)[-1][1]

    def truncate(self, upto):
        return CoefficientFunction.finite(self.n, dict(self.coefficients(upto)))

    def as_rational(self):
        return self if self.kind == "rational" else CoefficientFunction.rational(self.n, self.mellin())

    # -- linear structure --

    def _check(self, other):
        if other.n != self.n:
            raise ValueError("rank mismatch")

    def __add__(self, other):
        if not isinstance(other, CoefficientFunction):
            return NotImplemented
        self._check(other)
        if self.kind == other.kind == "finite":
            out = dict(self.coefficients(self.floor + len(self.coeffs)))
            for m, c in other.coefficients(other.floor + len(other.coeffs)):
                out[m] = out.get(m, _ZERO) + c
            return CoefficientFunction.finite(self.n, out)
        return CoefficientFunction.rational(self.n, self.mellin() + other.mellin())

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = scalar(c)
        if self.kind == "finite":
            return CoefficientFunction.finite(
                self.n, {self.floor + i: c * x for i, x in enumerate(self.coeffs)})
        return CoefficientFunction.rational(self.n, self.symbol * c)

    __rmul__ = scale

    def shift(self, c):
        """Translate the support by c: 1_m -> 1_{m+c}."""
        return CoefficientFunction.rational(self.n, self.mellin() * u_monomial(c)) \
            if self.kind == "rational" else CoefficientFunction.finite(
                self.n, {self.floor + i + c: x for i, x in enumerate(self.coeffs)})

    def __eq__(self, other):
        if not isinstance(other, CoefficientFunction):
            return NotImplemented
        return self.n == other.n and self.mellin() == other.mellin()

    def __hash__(self):
        return hash((self.n, self.mellin()))

    def __repr__(self):
        if self.kind == "finite":
            body = ", ".join(f"{self.floor + i}: {c}" for i, c in enumerate(self.coeffs))
            return f"CoefficientFunction(n={self.n}, finite {{{body}}})"
        return f"CoefficientFunction(n={self.n}, rational {self.symbol}, floor={self.floor})"

    # -- interchange --

    def to_json(self):
        doc = {"n": self.n, "kind": self.kind, "floor": self.floor}
        if self.kind == "finite":
            doc["coeffs"] = [str(c) for c in self.coeffs]
        else:
            doc["num"] = self.symbol.num_str
            doc["den"] = self.symbol.den_str
        return doc

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict):
            raise SchemaError("document must be a JSON object")
        for key in ("n", "kind", "floor"):
            if key not in doc:
                raise SchemaError(f"missing field {key!r}")
        n, kind, floor = doc["n"], doc["kind"], doc["floor"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError("field 'n' must be a positive integer")
        if not isinstance(floor, int) or isinstance(floor, bool):
            raise SchemaError("field 'floor' must be an integer")
        if kind == "finite":
            extra = set(doc) - {"n", "kind", "floor", "coeffs"}
            if extra or "coeffs" not in doc or not isinstance(doc["coeffs"], list):
                raise SchemaError("finite form needs exactly n, kind, floor, coeffs")
            coeffs = []
            for i, text in enumerate(doc["coeffs"]):
                try:
                    coeffs.append(ScalarQV.parse(text))
                except ParseError as e:
                    raise ParseError(f"field coeffs[{i}]: {e}") from None
            f = cls(n, "finite", floor, tuple(coeffs))
            return f
        if kind == "rational":
            extra = set(doc) - {"n", "kind", "floor", "num", "den"}
            if extra or "num" not in doc or "den" not in doc:
                raise SchemaError("rational form needs exactly n, kind, floor, num, den")
            parts = {}
            for key in ("num", "den"):
                try:
                    parts[key] = parse_expression(doc[key])
                except ParseError as e:
                    raise ParseError(f"field {key}: {e}") from None
            if parts["den"].is_zero():
                raise SchemaError("field den is zero")
            sym = symbol(parts["num"] / parts["den"])
            if not sym.is_zero():
                try:
                    sym.expect_floor(floor)
                except FloorMismatch as e:
                    raise SchemaError(f"field floor: {e}") from None
            return cls(n, "rational", floor, (), sym)
        raise SchemaError(f"field kind must be 'finite' or 'rational', got {kind!r}")


# -- operations -------------------------------------------------------------

def indicator(n, c):
    """1_c, the indicator of [P,P] c(varpi) K0."""
    return CoefficientFunction.finite(n, {c: 1})


def mellin(f) -> MellinSymbol:
    return f.mellin()


def inverse_mellin(sym, n):
    sym = symbol(sym)
    if not sym.is_zero():
        laurent_expand(sym, sym.floor)  # raises NotExpandable if needed
    return CoefficientFunction.rational(n, sym)


def basic_function(n, upto=None):
    """The basic function b; its Mellin symbol is d(s, chi) in U.

    With ``upto`` the finite truncation sum_{m <= upto} c_m 1_m is returned.
    """
    b = CoefficientFunction.rational(n, d_factor(n).symbol(n))
    return b if upto is None else b.truncate(upto)


def basic_function_direct(n, upto):
    """Truncation of b summed term by term over (a, b_1, .., b_h), h = floor(n/2)."""
    h = n // 2
    coeffs = {}
    q = q_power(1)
    for bs in itertools.product(range(upto // 2 + 1), repeat=h):
        weight = sum(2 * r * b for r, b in enumerate(bs, start=1))
        base = 2 * sum(bs)
        for a in range(0, upto - base + 1):
            m = a + base
            coeffs[m] = coeffs.get(m, _ZERO) + q ** weight
    return CoefficientFunction.finite(n, coeffs)


def fourier(f):
    """The spherical Fourier transform; always returns the rational form."""
    n = f.n
    sym = reflect_symbol(f.mellin(), n) * fourier_multiplier(n)
    return CoefficientFunction.rational(n, sym)


def evaluate(f, g, p):
    """f(g) for g in Sp_2n(Q) viewed at the prime p."""
    if g.n != f.n:
        raise ValueError("rank mismatch")
    return f.coefficient(coset_index(g, p))
