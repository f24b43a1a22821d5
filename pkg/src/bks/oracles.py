"""Checks that never pass through the L-factor formulas for a_w and d.

rank_one_intertwining
    The n = 1 long intertwining integral on the spherical vector, done as a
    sum over the shells |x| = q^k of F.  For |x| <= 1 one has w^-1 n(x) in K,
    so that region contributes vol(O) = 1.  For |x| = q^k > 1,

        w^-1 n(x) = [[0, -1], [1, x]] = [[x^-1, -1], [0, x]] * k,

    so f(w^-1 n(x)) = chi(x)^-1 |x|^-(s+1) = z^k q^-k(s+1) on a shell of
    volume q^k (1 - q^-1).

classical_fourier_pattern
    For n = 1, X = F^2 - {0} through the bottom row, and the lattice
    indicator 1_{p^c Z_p^2} restricted to X is sum_{m >= c} 1_m.  The
    self-dual transform sends it to q^-2c 1_{p^-c Z_p^2}.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import mpmath

from .exact_algebra import q_power, u_monomial
from .schwartz_nonarch import CoefficientFunction
from .weyl_lfactors import WeylCosetDatum, c_w


class DomainError(ValueError):
    pass


@dataclass
class ShellSumReport:
    q: float
    z: complex
    s: complex
    shells: int
    partial: complex
    closedForm: complex
    tailBound: float
    error: float
    roundoff: float
    ok: bool

    def to_json(self):
        doc = asdict(self)
        for key in ("z", "s", "partial", "closedForm"):
            doc[key] = [doc[key].real, doc[key].imag]
        return doc


def tail_bound(q, s_real, K):
    return (1 - 1 / q) * q ** (-(K + 1) * s_real) / (1 - q ** (-s_real))


def rank_one_intertwining(q, z, s, K):
    q = float(q)
    z = complex(z)
    s = complex(s)
    if s.real <= 0:
        raise DomainError("the shell sum converges only for Re(s) > 0")
    if q <= 1:
        raise DomainError("q must exceed 1")
    if abs(abs(z) - 1) > 1e-12:
        raise DomainError("z = chi(varpi) must have modulus 1")
    if K < 1:
        raise DomainError("need at least one shell")

    log10_bound = (
        math.log10(1 - 1 / q) - (K + 1) * s.real * math.log10(q) - math.log10(1 - q ** -s.real)
    )
    # enough digits that rounding sits far below the geometric tail bound
    dps = max(30, int(-log10_bound) + 20)
    with mpmath.workdps(dps):
        qm, zm, sm = mpmath.mpf(q), mpmath.mpc(z), mpmath.mpc(s)
        partial = mpmath.mpf(1)
        for k in range(1, K + 1):
            volume = qm ** k * (1 - 1 / qm)
            partial += volume * zm ** k * qm ** (-k * (sm + 1))
        U = zm * qm ** (-sm - 1)
        closed = c_w(WeylCosetDatum(1, (1,))).evaluate(qm, U, v=mpmath.sqrt(qm))
        bound = (1 - 1 / qm) * qm ** (-(K + 1) * sm.real) / (1 - qm ** (-sm.real))
        err = abs(partial - closed)
        # for z = 1 and real s the bound is attained, so compare at working
        # precision with an allowance 15 digits below the bound itself
        roundoff = mpmath.mpf(10) ** (-(dps - 5))
        return ShellSumReport(
            q=q, z=z, s=s, shells=K,
            partial=complex(partial), closedForm=complex(closed),
            tailBound=float(bound), error=float(err), roundoff=float(roundoff),
            ok=bool(err <= bound + roundoff),
        )


RANK_ONE_GRID_Q = (2, 3, 5, 7, 9)
RANK_ONE_GRID_Z = (1, -1, 1j, -1j)
RANK_ONE_GRID_S = (0.5, 1, 2, 0.25 + 3j, 1.5 - 2j, 0.75 + 0.5j)


def rank_one_grid(K=40):
    return [
        rank_one_intertwining(q, z, s, K)
        for q in RANK_ONE_GRID_Q for z in RANK_ONE_GRID_Z for s in RANK_ONE_GRID_S
    ]


def _lattice_indicator(c):
    # 1_{p^c Z_p^2} on X: every coset of index >= c, U^c / (1 - U)
    return u_monomial(c) / (1 - u_monomial(1))


def classical_fourier_pattern(c):
    """Valuation profile of the self-dual transform of 1_{p^c Z_p^2}, as an n = 1 function."""
    if abs(c) > 10:
        raise DomainError("|c| <= 10")
    volume = q_power(-2 * c)  # vol(p^c Z_p^2)
    return CoefficientFunction.rational(1, volume * _lattice_indicator(-c))


def classical_fourier_of_lattices(weights):
    """Transform of sum_c w_c 1_{p^c Z_p^2} by linearity; weights = {c: w_c}."""
    total = None
    for c, w in weights.items():
        term = classical_fourier_pattern(c).scale(w)
        total = term if total is None else total + term
    return total


def lattice_combination(weights):
    """sum_c w_c 1_{p^c Z_p^2} itself, as an n = 1 coefficient function."""
    total = None
    for c, w in weights.items():
        term = CoefficientFunction.rational(1, _lattice_indicator(c)).scale(w)
        total = term if total is None else total + term
    return total
