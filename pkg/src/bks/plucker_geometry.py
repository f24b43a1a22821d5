"""Exact symplectic matrices, the Pluecker map to wedge^n F^2n, local norms and coset indices.

Conventions (frozen so that serialized wedge vectors are stable):

* J = [[0, I], [-I, 0]] and g is symplectic iff g J^-1 g^t J = I.
* Pl(g) = b_1 ^ ... ^ b_n where b_i is the i-th row of the bottom n x 2n
  block of g.  Its coordinate on e_alpha = e_alpha1 ^ ... ^ e_alphan is the
  n x n minor of the bottom block on columns alpha (rows kept in order).
  Subsets alpha run in lexicographic order of itertools.combinations.
* The Archimedean norm is the Euclidean length of the coordinate vector,
  which is invariant under Sp_2n(R) cap O(2n).
"""

from __future__ import annotations

import itertools
import math
import random as _random
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "NotSymplectic",
    "SingularLevi",
    "SymplecticMatrix",
    "WedgeVector",
    "make",
    "pluecker",
    "norm",
    "coset_index",
    "p_valuation",
    "omega",
    "default_rng",
    "random_derived_parabolic",
    "random_integral",
    "random_levi",
    "random_symplectic",
    "rational_unitary_symplectic",
]


class NotSymplectic(ValueError):
    pass


class SingularLevi(ValueError):
    pass


# -- small exact linear algebra ---------------------------------------------

def _identity(m):
    return [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]


def _matmul(a, b):
    bt = list(zip(*b))
    # structured matrices are mostly zeros
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt]
            for row in a]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _det(a):
    m = [list(r) for r in a]
    size = len(m)
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if size == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _inverse(a):
    size = len(a)
    m = [list(r) + e for r, e in zip(a, _identity(size))]
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c]), None)
        if piv is None:
            raise SingularLevi("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(size):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[size:] for row in m]


def _as_fraction(x):
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("symplectic matrices take exact entries, not floats")
    return Fraction(x)


def J_matrix(n):
    z = Fraction(0)
    rows = []
    for i in range(2 * n):
        row = [z] * (2 * n)
        if i < n:
            row[n + i] = Fraction(1)
        else:
            row[i - n] = Fraction(-1)
        rows.append(row)
    return rows


def _block(a, b, c, d):
    return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]


# -- types ------------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticMatrix:
    n: int
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in self.entries)
        if len(rows) != 2 * self.n or any(len(r) != 2 * self.n for r in rows):
            raise NotSymplectic(f"expected a {2 * self.n}x{2 * self.n} matrix")
        object.__setattr__(self, "entries", rows)
        if not _is_symplectic(rows, self.n):
            raise NotSymplectic("g J^-1 g^t J != I")

    @classmethod
    def _trusted(cls, n, rows):
        # products and inverses of symplectic matrices need no re-check
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "entries", tuple(map(tuple, rows)))
        return obj

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        if len(rows) % 2:
            raise NotSymplectic("matrix size must be even")
        return cls(len(rows) // 2, tuple(tuple(r) for r in rows))

    @property
    def rows(self):
        return [list(r) for r in self.entries]

    @property
    def bottom(self):
        return [list(r) for r in self.entries[self.n:]]

    def __matmul__(self, other):
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("rank mismatch")
        return SymplecticMatrix._trusted(self.n, _matmul(self.entries, other.entries))

    def inverse(self):
        # g^-1 = J^-1 g^t J
        J = J_matrix(self.n)
        Jinv = [[-x for x in r] for r in J]
        prod = _matmul(_matmul(Jinv, _transpose(self.entries)), J)
        return SymplecticMatrix._trusted(self.n, prod)

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        out = make("identity", self.n)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def is_symplectic(self):
        return _is_symplectic(self.entries, self.n)

    def to_json(self):
        return [[str(x) for x in row] for row in self.entries]


def _is_symplectic(rows, n):
    J = J_matrix(n)
    Jinv = [[-x for x in r] for r in J]
    prod = _matmul(_matmul(_matmul(rows, Jinv), _transpose(rows)), J)
    return prod == _identity(2 * n)


@dataclass(frozen=True)
class WedgeVector:
    n: int
    coords: tuple

    @property
    def subsets(self):
        return list(itertools.combinations(range(1, 2 * self.n + 1), self.n))

    def items(self):
        return list(zip(self.subsets, self.coords))

    def nonzero(self):
        return {a: x for a, x in self.items() if x}

    def scale(self, c):
        return WedgeVector(self.n, tuple(c * x for x in self.coords))


# -- constructors -----------------------------------------------------------

def make(kind, n, *args, **params):
    """Build a symplectic matrix.

    kinds: ``identity``; ``unipotent`` (Z symmetric); ``lower_unipotent`` (Z symmetric);
    ``levi`` (A invertible): diag(A, A^-t); ``siegel_torus`` (x, c=1): the cocharacter
    c(x) = diag(x^-c, 1, .., 1, x^c, 1, .., 1); ``weyl``: J; ``product`` of matrices.
    """
    zero = [[Fraction(0)] * n for _ in range(n)]
    one = _identity(n)
    if kind == "identity":
        return SymplecticMatrix._trusted(n, _identity(2 * n))
    if kind in ("unipotent", "lower_unipotent"):
        Z = params.get("Z", args[0] if args else None)
        Z = [[_as_fraction(x) for x in row] for row in Z]
        if len(Z) != n or any(len(r) != n for r in Z):
            raise NotSymplectic(f"Z must be {n}x{n}")
        if Z != _transpose(Z):
            raise NotSymplectic("Z must be symmetric")
        blocks = (one, Z, zero, one) if kind == "unipotent" else (one, zero, Z, one)
        # symmetric Z makes these symplectic by construction
        return SymplecticMatrix._trusted(n, _block(*blocks))
    if kind == "levi":
        A = params.get("A", args[0] if args else None)
        A = [[_as_fraction(x) for x in row] for row in A]
        if len(A) != n or any(len(r) != n for r in A):
            raise SingularLevi(f"A must be {n}x{n}")
        if not _det(A):
            raise SingularLevi("Levi block is singular")
        Ainvt = _transpose(_inverse(A))
        return SymplecticMatrix._trusted(n, _block(A, zero, zero, Ainvt))
    if kind == "siegel_torus":
        x = _as_fraction(params.get("x", args[0] if args else None))
        c = int(params.get("c", args[1] if len(args) > 1 else 1))
        if not x:
            raise SingularLevi("x must be nonzero")
        A = _identity(n)
        A[0][0] = x ** -c
        return make("levi", n, A)
    if kind == "weyl":
        return SymplecticMatrix._trusted(n, J_matrix(n))
    if kind == "product":
        mats = params.get("factors", args)
        out = make("identity", n)
        for m in mats:
            out = out @ m
        return out
    raise ValueError(f"unknown kind {kind!r}")


def omega(m):
    """det A for a Levi element diag(A, A^-t)."""
    n = m.n
    return _det([row[:n] for row in m.entries[:n]])


# -- Pluecker map and norms -------------------------------------------------

def pluecker(g):
    B = g.bottom
    coords = []
    for cols in itertools.combinations(range(2 * g.n), g.n):
        coords.append(_det([[row[c] for c in cols] for row in B]))
    return WedgeVector(g.n, tuple(coords))


def p_valuation(x, p):
    x = Fraction(x)
    if not x:
        raise ValueError("valuation of zero")
    v = 0
    a, b = x.numerator, x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def _is_archimedean(place):
    return place in ("inf", "infinity", math.inf) or place is None


def wedge_norm(w, place):
    if _is_archimedean(place):
        return math.sqrt(float(sum(x * x for x in w.coords)))
    k = min(p_valuation(x, place) for x in w.coords if x)
    return Fraction(place) ** -k


def norm(g, place):
    """|g| = |Pl(g)|: exact p^-k at a prime p, a float at the real place."""
    return wedge_norm(pluecker(g), place)


def coset_index(g, p):
    """The unique c with |g|_p = p^-c, i.e. g in [P,P] c(p) Sp_2n(Z_p)."""
    w = pluecker(g)
    return min(p_valuation(x, p) for x in w.coords if x)


# -- random elements (test and verification drivers) ------------------------

def _rand_rational(rng, bound, avoid=None):
    while True:
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        if avoid is not None and den % avoid == 0:
            continue
        return Fraction(num, den)


def _rand_symmetric(rng, n, bound, avoid=None):
    Z = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            Z[i][j] = Z[j][i] = _rand_rational(rng, bound, avoid)
    return Z


def _elementary_word(rng, n, bound, avoid=None, length=3):
    A = _identity(n)
    for _ in range(length):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        E = _identity(n)
        E[i][j] = _rand_rational(rng, bound, avoid)
        A = _matmul(A, E)
    return A


def random_derived_parabolic(rng, n, bound=10**6):
    """A random element of [P,P] = SL_n x N with rational entries."""
    A = _elementary_word(rng, n, bound)
    return make("levi", n, A) @ make("unipotent", n, _rand_symmetric(rng, n, bound))


def random_integral(rng, n, p, bound=10**6, length=4):
    """A random element of Sp_2n(Z_p): words in p-integral generators."""
    out = make("identity", n)
    for _ in range(length):
        kind = rng.choice(["unipotent", "lower_unipotent", "levi", "weyl"])
        if kind == "levi":
            A = _elementary_word(rng, n, bound, avoid=p)
            unit = _rand_rational(rng, bound, avoid=p)
            while unit == 0 or p_valuation(unit, p) != 0:
                unit = _rand_rational(rng, bound, avoid=p)
            A[0] = [unit * x for x in A[0]]
            g = make("levi", n, A)
        elif kind == "weyl":
            g = make("weyl", n)
        else:
            g = make(kind, n, _rand_symmetric(rng, n, bound, avoid=p))
        out = out @ g
    return out


def random_levi(rng, n, bound=50):
    while True:
        A = [[_rand_rational(rng, bound) for _ in range(n)] for _ in range(n)]
        if _det(A):
            return make("levi", n, A)


def random_symplectic(rng, n, p=None, bound=1000):
    """A random symplectic matrix with a spread of coset indices."""
    pieces = [
        random_levi(rng, n, bound=20),
        make("unipotent", n, _rand_symmetric(rng, n, bound)),
        make("weyl", n),
        make("lower_unipotent", n, _rand_symmetric(rng, n, bound)),
    ]
    if p is not None:
        pieces.insert(0, make("siegel_torus", n, p, rng.randint(-3, 3)))
    return make("product", n, *pieces)


def rational_unitary_symplectic(rng, n, bound=20, special_orthogonal=False):
    """An exact element of Sp_2n(R) cap O(2n) via a Cayley transform.

    With ``special_orthogonal`` the result is diag(O, O) with O in SO(n), which
    lies in the maximal compact subgroup of [P,P].
    """
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = _rand_rational(rng, bound)
            A[j][i] = -A[i][j]
    if special_orthogonal:
        one = _identity(n)
        O = _matmul(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(one, A)],
            _inverse([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(one, A)]),
        )
        return make("levi", n, O)
    B = _rand_symmetric(rng, n, bound)
    # real form of S = A + iB (skew-Hermitian); unitary W = (I - S)(I + S)^-1
    S = _block(A, B, [[-x for x in r] for r in B], A)
    one = _identity(2 * n)
    minus = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(one, S)]
    plus = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(one, S)]
    W = _matmul(minus, _inverse(plus))
    return SymplecticMatrix(n, tuple(map(tuple, W)))


def default_rng(seed=0):
    return _random.Random(seed)
