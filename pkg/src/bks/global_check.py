"""Numerical check of the summation formula for n = 1 over Q.

Test function: Phi = (prod_p b_p) x Phi_inf with Phi_inf(x) = exp(-pi lam |x|^2)
on X(R) = R^2 - {0}.  Its Fourier transform is (prod_p b_p) x lam^-1 exp(-pi |x|^2 / lam):
the basic functions are fixed and the Archimedean factor is taken to be the
self-dual plane transform (an assumption, not derived here).

For n = 1 the only residue is at s = 1 with chi = 1.  Unfolding the
Eisenstein series against Phi_{1_s} gives

    E(I, Phi_{1_s}) = 1/2 lam^-(s+1)/2 Gamma_R(s+1) Z((s+1)/2),
    Z(w) = sum'_{(a,b) != 0} (a^2 + b^2)^-w,

with d^x a = da/|a| at the real place (zeta_R(1) = 1) and vol(Z_p^x) = 1.
The residue at s = 1 is computed by two unrelated routes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath

from .plucker_geometry import SymplecticMatrix
from .schwartz_nonarch import basic_function, evaluate

KAPPA_Q = 1  # Res_{s=1} zeta(s); the completed zeta gives the same value since Gamma_R(1) = 1
FINITE_PRIMES = (2, 3, 5)
RESIDUE_AGREEMENT = 1e-6
_DPS = 30


class DomainError(ValueError):
    pass


class OracleDisagreement(RuntimeError):
    pass


class CheckFailed(RuntimeError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"discrepancy {report.discrepancy:.3e} >= tol {report.tol:.1e}")


@dataclass
class GlobalCheckReport:
    lam: float
    radius: float
    tol: float
    sumPhi: float
    sumFPhi: float
    resPhi: float
    resFPhi: float
    lhs: float
    rhs: float
    discrepancy: float
    residue_routes: dict = field(default_factory=dict)
    finite_places: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.discrepancy < self.tol

    def to_json(self):
        doc = asdict(self)
        doc["lambda"] = doc.pop("lam")
        doc["ok"] = self.ok
        return doc


def _check_domain(lam, radius=None):
    if not 1 / 8 <= lam <= 8:
        raise DomainError("lambda must lie in [1/8, 8]")
    if radius is not None and radius < 5:
        raise DomainError("radius must be at least 5")


def _row_matrix(a, b):
    """An element of SL_2(Q) with bottom row (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if b:
        return SymplecticMatrix.from_rows([[1 / b, 0], [a, b]])
    return SymplecticMatrix.from_rows([[0, -1 / a], [a, 0]])


_B_TRUNC = 64


def finite_factor(a, b, primes=FINITE_PRIMES, _cache={}):
    """prod_p b_p((a, b)) over the given primes, evaluated through the coset index."""
    if "b" not in _cache:
        _cache["b"] = basic_function(1, upto=_B_TRUNC)
    g = _row_matrix(a, b)
    value = 1
    for p in primes:
        c = evaluate(_cache["b"], g, p)
        value *= c.evaluate(float(p))
    return value


def lattice_sum(lam, radius, check_finite=True):
    """Truncated sums of Phi and F(Phi) over X(Q) = Q^2 - {0}.

    Phi vanishes off Z^2 (b_p(x) = 0 once |x|_p > 1), so only lattice points
    contribute.  With ``check_finite`` the finite-place factor is evaluated at
    p = 2, 3, 5 for every lattice point and for a few non-integral points.
    """
    _check_domain(lam, radius)
    R = int(math.floor(radius))
    phi, fphi = [], []
    checked = 0
    for x in range(-R, R + 1):
        for y in range(-R, R + 1):
            N = x * x + y * y
            if N == 0 or N > radius * radius:
                continue
            w = 1.0
            if check_finite:
                w = finite_factor(x, y)
                if w != 1:
                    raise AssertionError(f"b_p({x},{y}) = {w}, expected 1")
                checked += 1
            phi.append(w * math.exp(-math.pi * lam * N))
            fphi.append(w * math.exp(-math.pi * N / lam) / lam)
    info = {"integral_points_checked": checked}
    if check_finite:
        off = [(Fraction(1, 2), 0), (Fraction(1, 3), 1), (Fraction(2, 5), Fraction(1, 5)),
               (3, Fraction(7, 6)), (Fraction(1, 4), Fraction(1, 2))]
        for a, b in off:
            if finite_factor(a, b) != 0:
                raise AssertionError(f"b vanishes at ({a},{b}) but evaluated nonzero")
        info["nonintegral_points_checked"] = len(off)
    return math.fsum(phi), math.fsum(fphi), info


# -- residues ---------------------------------------------------------------

def epstein_zeta(w, cutoff=8):
    """Z(w) = sum' (a^2+b^2)^-w by the theta-split (incomplete gamma) formula.

    pi^-w Gamma(w) Z(w) = 1/(w-1) - 1/w
        + sum' [ (pi N)^-w Gamma(w, pi N) + (pi N)^(w-1) Gamma(1-w, pi N) ],
    valid for all w != 0, 1 because Z^2 is self-dual.
    """
    w = mpmath.mpmathify(w)
    total = 1 / (w - 1) - 1 / w
    for a in range(-cutoff, cutoff + 1):
        for b in range(-cutoff, cutoff + 1):
            N = a * a + b * b
            if N == 0:
                continue
            x = mpmath.pi * N
            total += x ** (-w) * mpmath.gammainc(w, x) + x ** (w - 1) * mpmath.gammainc(1 - w, x)
    return total * mpmath.pi ** w / mpmath.gamma(w)


def gamma_R(s):
    return mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2)


def _eisenstein_times_pole(s, scale, prefactor):
    # (s - 1) E(I, Phi_{1_s}) for Phi_inf = prefactor * exp(-pi scale |x|^2)
    w = (s + 1) / 2
    return (s - 1) * prefactor * mpmath.mpf(1) / 2 * scale ** (-w) * gamma_R(s + 1) * epstein_zeta(w)


def residue_route_a(scale, prefactor=1, steps=(1e-3, 1e-4)):
    """Symmetric differences around s = 1, then Richardson in h^2."""
    with mpmath.workdps(_DPS):
        scale, prefactor = mpmath.mpf(scale), mpmath.mpf(prefactor)
        sym = []
        for h in steps:
            h = mpmath.mpf(h)
            plus = _eisenstein_times_pole(1 + h, scale, prefactor)
            minus = _eisenstein_times_pole(1 - h, scale, prefactor)
            sym.append(((plus + minus) / 2, h))
        (s1, h1), (s2, h2) = sym
        return float((h1 ** 2 * s2 - h2 ** 2 * s1) / (h1 ** 2 - h2 ** 2))


def residue_route_b(scale, prefactor=1):
    """Z(w) = 4 zeta(w) beta(w); the pole sits in zeta, (s-1) zeta((s+1)/2) -> 2."""
    with mpmath.workdps(_DPS):
        scale, prefactor = mpmath.mpf(scale), mpmath.mpf(prefactor)
        beta1 = mpmath.dirichlet(1, [0, 1, 0, -1])
        res_zeta = 1  # Res_{w=1} zeta(w)
        val = prefactor * mpmath.mpf(1) / 2 * scale ** -1 * gamma_R(2) * 4 * beta1 * 2 * res_zeta
        return float(val)


def eisenstein_residue(lam):
    """(Res E(Phi_{1_s}), Res E(F(Phi)_{1_s})) at s = 1, each divided by kappa_Q."""
    _check_domain(lam)
    routes = {}
    for name, scale, pref in (("Phi", lam, 1), ("FPhi", 1 / lam, 1 / lam)):
        a = residue_route_a(scale, pref)
        b = residue_route_b(scale, pref)
        routes[name] = {"route_a": a, "route_b": b, "difference": abs(a - b)}
        if abs(a - b) > RESIDUE_AGREEMENT:
            raise OracleDisagreement(f"{name}: route A {a!r} vs route B {b!r}")
    res_phi = routes["Phi"]["route_a"] / KAPPA_Q
    res_fphi = routes["FPhi"]["route_a"] / KAPPA_Q
    return res_phi, res_fphi, routes


def verify_theorem_n1(lam, radius=10, tol=1e-8):
    if tol < 1e-9:
        raise DomainError("tol must be at least 1e-9")
    sum_phi, sum_fphi, finite = lattice_sum(lam, radius)
    res_phi, res_fphi, routes = eisenstein_residue(lam)
    lhs = sum_phi + res_fphi
    rhs = sum_fphi + res_phi
    report = GlobalCheckReport(
        lam=float(lam), radius=float(radius), tol=float(tol),
        sumPhi=sum_phi, sumFPhi=sum_fphi, resPhi=res_phi, resFPhi=res_fphi,
        lhs=lhs, rhs=rhs, discrepancy=abs(lhs - rhs),
        residue_routes=routes, finite_places=finite,
    )
    if not report.ok:
        raise CheckFailed(report)
    return report
