"""Coset representatives for W(Sp_2n)/W(M) and the unramified L-factor data a_w, d, c_w.

Every L-factor that occurs is L(e*s + a, chi^|e|) with e in {+-1, +-2}
(chi conjugated when e < 0).  For unramified chi all of them are rational
in the single Mellin variable

    U = chi(varpi) * q^(-s-(n+1)/2),

through the substitution table

    L(e*s + a, chi^|e|)  ->  1 / (1 - U^e * v^(e*(n+1) - 2a)),   q = v^2.

Derivation: chi(varpi)^e q^(-e*s) = U^e q^(e(n+1)/2), and chi-bar(varpi) =
chi(varpi)^(-1) because chi is unitary.  The exponent of v is an integer
since a is a half-integer.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import MellinSymbol, symbol, u_monomial

log = logging.getLogger(__name__)

MAX_RANK = 8


class EmptyMinSet(ValueError):
    pass


@dataclass(frozen=True)
class WeylCosetDatum:
    """The minimal-length representative w_I, encoded by the subset I."""

    n: int
    I: tuple = ()

    def __post_init__(self):
        I = tuple(int(i) for i in self.I)
        object.__setattr__(self, "I", I)
        if self.n < 1:
            raise ValueError("rank must be positive")
        if any(b <= a for a, b in zip(I, I[1:])):
            raise ValueError(f"I must be strictly increasing, got {I}")
        if I and (I[0] < 1 or I[-1] > self.n):
            raise ValueError(f"I must lie in 1..{self.n}, got {I}")

    @property
    def k(self):
        return len(self.I)

    @property
    def J(self):
        return tuple(j for j in range(1, self.n + 1) if j not in self.I)

    def i(self, r):
        return self.I[r - 1]

    def j(self, r):
        return self.J[r - 1]


def enumerate_cosets(n):
    if not 1 <= n <= MAX_RANK:
        raise ValueError(f"n must be in 1..{MAX_RANK}")
    return [
        WeylCosetDatum(n, I)
        for k in range(n + 1)
        for I in itertools.combinations(range(1, n + 1), k)
    ]


def long_element(n):
    return WeylCosetDatum(n, tuple(range(1, n + 1)))


def mu(w, r):
    n, k = w.n, w.k
    if not 1 <= r <= n // 2:
        raise ValueError(f"r must be in 1..{n // 2}")
    if r >= n - k + 1:
        return r + 1
    # strict: i_{n-m+1} < j_r
    candidates = [m for m in range(n - k + 1, n + 1) if w.i(n - m + 1) < w.j(r)]
    if not candidates:
        raise EmptyMinSet(f"mu undefined for n={n}, I={w.I}, r={r}")
    return min(candidates)


# -- L-factor atoms ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class LFactorAtom:
    """L(e*s + a, chi^|e|); chi is conjugated when e < 0."""

    e: int
    a: Fraction

    def __post_init__(self):
        if self.e not in (-2, -1, 1, 2):
            raise ValueError(f"coefficient of s must be +-1 or +-2, got {self.e}")
        a = Fraction(self.a)
        if (2 * a).denominator != 1:
            raise ValueError(f"shift must be a half-integer, got {a}")
        object.__setattr__(self, "a", a)

    def reflect(self):
        """(s, chi) -> (-s, chi-bar)."""
        return LFactorAtom(-self.e, self.a)

    def v_exponent(self, n):
        return int(self.e * (n + 1) - 2 * self.a)

    def symbol(self, n):
        return 1 / (1 - u_monomial(self.e, self.v_exponent(n)))

    def __str__(self):
        e, a = self.e, self.a
        s = {1: "s", 2: "2s", -1: "-s", -2: "-2s"}[e]
        if a > 0:
            s += f"+{a}"
        elif a < 0:
            s += f"-{-a}"
        chi = "chi" if e > 0 else "chibar"
        if abs(e) == 2:
            chi += "^2"
        return f"L({s},{chi})"


def L(e, a):
    return LFactorProduct.of(LFactorAtom(e, Fraction(a)))


class LFactorProduct:
    """A formal product of atoms with integer multiplicities (negative = denominator)."""

    __slots__ = ("_atoms",)

    def __init__(self, atoms=None):
        clean = {}
        for atom, mult in (atoms or {}).items():
            if mult:
                clean[atom] = mult
        self._atoms = clean

    @classmethod
    def of(cls, *atoms):
        out = {}
        for atom in atoms:
            out[atom] = out.get(atom, 0) + 1
        return cls(out)

    @property
    def atoms(self):
        return dict(self._atoms)

    def numerator_atoms(self):
        return [(a, m) for a, m in self._atoms.items() if m > 0]

    def denominator_atoms(self):
        return [(a, -m) for a, m in self._atoms.items() if m < 0]

    def __mul__(self, other):
        out = dict(self._atoms)
        for atom, mult in other._atoms.items():
            out[atom] = out.get(atom, 0) + mult
        return LFactorProduct(out)

    def inverse(self):
        return LFactorProduct({a: -m for a, m in self._atoms.items()})

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        return LFactorProduct({a: m * k for a, m in self._atoms.items()})

    def reflect(self):
        return LFactorProduct({a.reflect(): m for a, m in self._atoms.items()})

    def __eq__(self, other):
        if not isinstance(other, LFactorProduct):
            return NotImplemented
        return self._atoms == other._atoms

    def __hash__(self):
        return hash(frozenset(self._atoms.items()))

    def symbol(self, n) -> MellinSymbol:
        out = symbol(1)
        for atom, mult in self._atoms.items():
            out = out * atom.symbol(n) ** mult
        return out

    def __str__(self):
        def join(pairs):
            return " * ".join(str(a) if m == 1 else f"{a}^{m}" for a, m in pairs)

        num, den = self.numerator_atoms(), self.denominator_atoms()
        top = join(num) if num else "1"
        if not den:
            return top
        bottom = join(den)
        if len(den) > 1 or den[0][1] != 1:
            bottom = f"({bottom})"
        return f"{top} / {bottom}"

    def __repr__(self):
        return f"LFactorProduct({str(self)!r})"


# -- a_w, d, c_w ------------------------------------------------------------

def d_factor(n) -> LFactorProduct:
    out = L(1, Fraction(n + 1, 2))
    for r in range(1, n // 2 + 1):
        out = out * L(2, n + 1 - 2 * r)
    return out


def a_w(w) -> LFactorProduct:
    n, k = w.n, w.k
    half = n // 2
    out = L(1, Fraction(n + 1, 2) - k)
    for r in range(1, min(k, half) + 1):
        if w.i(r) >= 2 * r:
            out = out * L(2, w.i(r) - 2 * r + 1)
    for r in range(1, min(k, half) + 1):
        if w.i(r) <= 2 * r - 1:
            m = mu(w, r)
            log.debug("mu consumed: n=%d I=%s r=%d mu=%d", n, w.I, r, m)
            out = out * L(2, -n + r + m - 1)
    for r in range(k + 1, half + 1):
        out = out * L(2, n + 1 - 2 * r)
    return out


def a_w0_closed_form(n) -> LFactorProduct:
    out = L(1, Fraction(1 - n, 2))
    for r in range(1, n // 2 + 1):
        out = out * L(2, -n + 2 * r)
    return out


def c_w_product(w) -> LFactorProduct:
    return a_w(w) / d_factor(w.n)


def c_w(w) -> MellinSymbol:
    return a_w(w).symbol(w.n) / d_factor(w.n).symbol(w.n)


def mu_consumers(n):
    """Every (I, r, mu) where a_w evaluates mu; raises EmptyMinSet on a gap."""
    out = []
    for w in enumerate_cosets(n):
        for r in range(1, min(w.k, n // 2) + 1):
            if w.i(r) <= 2 * r - 1:
                out.append((w.I, r, mu(w, r)))
    return out


# -- gamma normalization and the Fourier multiplier -------------------------

def gamma(e, a) -> LFactorProduct:
    """Unramified gamma(e*s + a, chi^|e|, psi) = L(1 - e*s - a, chi-bar^|e|) / L(e*s + a, chi^|e|)."""
    return L(-e, 1 - Fraction(a)) / L(e, a)


def normalizing_factor(n) -> LFactorProduct:
    out = gamma(1, -Fraction(n - 1, 2))
    for r in range(1, n // 2 + 1):
        out = out * gamma(2, -n + 2 * r)
    return out


def normalized_long_intertwiner(n) -> LFactorProduct:
    """Spherical eigenvalue of M*_{w0} on I(chi_s), as a product of L-factors."""
    return normalizing_factor(n) * c_w_product(long_element(n))


def fourier_multiplier_product(n) -> LFactorProduct:
    # M*_{w0} acts on the section at (chi-bar, -s) and lands in I(chi_s)
    return normalized_long_intertwiner(n).reflect()


def fourier_multiplier(n) -> MellinSymbol:
    if not 1 <= n <= MAX_RANK:
        raise ValueError(f"n must be in 1..{MAX_RANK}")
    return fourier_multiplier_product(n).symbol(n)


def reflect_symbol(f, n):
    """f(U) -> f(U^-1 q^-(n+1)), the Mellin image of (chi, s) -> (chi-bar, -s)."""
    return symbol(f).substitute_monomial(-1, -2 * (n + 1))


def gk_product_factors(n) -> LFactorProduct:
    out = LFactorProduct()
    for i in range(1, n + 1):
        out = out * L(1, Fraction(n + 1, 2) - i) / L(1, Fraction(n + 1, 2) - i + 1)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        out = out * L(2, n + 1 - i - j) / L(2, n + 2 - i - j)
    return out


def gk_product(n) -> MellinSymbol:
    if not 1 <= n <= 6:
        raise ValueError("gk_product is provided for 1 <= n <= 6")
    return gk_product_factors(n).symbol(n)
