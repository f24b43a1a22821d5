"""Named verification checks, one per acceptance criterion.

Each check returns a :class:`CheckResult`; the CLI ``verify`` subcommands and
the acceptance tests both run these.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

import mpmath

from . import oracles
from .exact_algebra import q_power, scalar, symbol, u_monomial
from .global_check import eisenstein_residue, verify_theorem_n1, CheckFailed
from .plucker_geometry import (
    coset_index,
    make,
    norm,
    omega,
    pluecker,
    random_derived_parabolic,
    random_integral,
    random_levi,
    random_symplectic,
)
from .schwartz_nonarch import CoefficientFunction, basic_function, fourier, indicator
from .weyl_lfactors import (
    WeylCosetDatum,
    a_w,
    a_w0_closed_form,
    c_w,
    d_factor,
    gk_product,
    long_element,
)


@dataclass
class CheckResult:
    name: str
    identity: str
    ok: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "name": self.name,
            "identity": self.identity,
            "status": "pass" if self.ok else "fail",
            "seconds": round(self.seconds, 4),
            "detail": self.detail,
        }


def _timed(name, identity, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return CheckResult(name, identity, bool(ok), time.perf_counter() - t0, detail)


# -- 1. a_w special cases ----------------------------------------------------

def check_aw_special_cases(ns=range(1, 7)):
    def run():
        detail = {}
        for n in ns:
            d = d_factor(n).symbol(n)
            empty = WeylCosetDatum(n, ())
            w0 = long_element(n)
            row = {
                "a_empty_eq_d": str(a_w(empty).symbol(n)) == str(d),
                "c_empty_eq_1": str(c_w(empty)) == "1",
                "a_w0_closed_form": str(a_w(w0).symbol(n)) == str(a_w0_closed_form(n).symbol(n)),
            }
            detail[str(n)] = row
        return all(all(r.values()) for r in detail.values()), detail
    return _timed("aw-special-cases", "basic-cases", run)


# -- 2. Gindikin-Karpelevich product ----------------------------------------

def check_gk(ns=range(1, 7)):
    def run():
        detail = {str(n): str(gk_product(n)) == str(c_w(long_element(n))) for n in ns}
        return all(detail.values()), detail
    return _timed("gk-product", "gk-equals-c-w0", run)


# -- 3. F(b) = b ------------------------------------------------------------

def check_basic_fixed(ns=range(1, 5)):
    def run():
        detail = {}
        for n in ns:
            b = basic_function(n)
            detail[str(n)] = str(fourier(b).mellin()) == str(b.mellin())
        return all(detail.values()), detail
    return _timed("basic-fixed", "lemma-basic-fixed", run)


# -- 4. involution ----------------------------------------------------------

def random_symbol(rng):
    """A random Laurent-expandable Mellin symbol with small exact coefficients."""
    num = symbol(0)
    for i in range(rng.randint(1, 4)):
        c = scalar(rng.choice([-3, -2, -1, 1, 2, 3])) * q_power(
            rng.choice([-2, -1, -0.5, 0, 0.5, 1, 2]))
        num = num + c * u_monomial(i)
    if num.is_zero():
        num = symbol(1)
    den = symbol(1)
    for _ in range(rng.randint(0, 2)):
        e = rng.choice([1, 2])
        c = rng.choice([-1, 1]) * q_power(rng.choice([-1, -0.5, 0, 0.5, 1, 2]))
        den = den * (1 - c * u_monomial(e))
    return num * u_monomial(rng.randint(-2, 2)) / den


def random_function(rng, n):
    return CoefficientFunction.rational(n, random_symbol(rng))


def check_involution(ns=range(1, 5), per_n=25, seed=20240101):
    def run():
        rng = random.Random(seed)
        detail = {}
        for n in ns:
            passed = 0
            for _ in range(per_n):
                f = random_function(rng, n)
                if str(fourier(fourier(f)).mellin()) == str(f.mellin()):
                    passed += 1
            detail[str(n)] = f"{passed}/{per_n}"
        return all(v == f"{per_n}/{per_n}" for v in detail.values()), detail
    return _timed("involution", "fourier-involution", run)


# -- 5. rank-one shell sum --------------------------------------------------

def check_rank_one(K=40):
    def run():
        reports = oracles.rank_one_grid(K)
        worst = max(r.error / r.tailBound for r in reports)
        return all(r.ok for r in reports), {
            "points": len(reports),
            "failures": sum(not r.ok for r in reports),
            "max_error_over_bound": worst,
        }
    return _timed("rank-one", "intertwining-integral-n1", run)


def check_rank_one_point(q, z, s, K):
    def run():
        r = oracles.rank_one_intertwining(q, z, s, K)
        return r.ok, r.to_json()
    return _timed("rank-one", "intertwining-integral-n1", run)


# -- 6. classical plane transform -------------------------------------------

def check_classical(cs=range(-3, 4)):
    def run():
        detail = {}
        for c in cs:
            ours = fourier(basic_function(1).shift(c))
            detail[str(c)] = str(ours.mellin()) == str(oracles.classical_fourier_pattern(c).mellin())
        return all(detail.values()), detail
    return _timed("classical", "classical-fourier-n1", run)


# -- 7. geometry ------------------------------------------------------------

def check_geometry(pairs=500, equivariance=200, ns=(1, 2, 3), primes=(2, 3, 5), seed=7):
    def run():
        rng = random.Random(seed)
        detail = {}
        ok = True
        for n in ns:
            bad = 0
            for i in range(pairs):
                p = primes[i % len(primes)]
                g = random_symplectic(rng, n, p)
                u = random_derived_parabolic(rng, n)
                k = random_integral(rng, n, p)
                if norm(u @ g @ k, p) != norm(g, p):
                    bad += 1
            detail[f"invariance_n{n}"] = f"{pairs - bad}/{pairs}"
            ok &= bad == 0
        bad = 0
        for i in range(equivariance):
            n = ns[i % len(ns)]
            m = random_levi(rng, n)
            x = random_symplectic(rng, n)
            if pluecker(m @ x) != pluecker(x).scale(1 / omega(m)):
                bad += 1
        detail["equivariance"] = f"{equivariance - bad}/{equivariance}"
        ok &= bad == 0
        for n in ns:
            for p in primes:
                for c in range(-3, 4):
                    t = make("siegel_torus", n, p, c)
                    ok &= coset_index(t, p) == c
        return ok, detail
    return _timed("geometry", "pluecker-norm-invariance", run)


# -- 8. growth and support --------------------------------------------------

def expected_support_floor(n):
    """The floor as stated in the acceptance criterion."""
    return -(1 + n // 2)


def check_support_floor(ns=range(1, 5)):
    def run():
        detail = {}
        for n in ns:
            got = fourier(indicator(n, 0)).floor
            detail[str(n)] = {"floor": got, "expected": expected_support_floor(n)}
        return all(v["floor"] == v["expected"] for v in detail.values()), detail
    return _timed("support-floor", "lemma-bounded", run)


def check_growth(ns=range(1, 5), q=101, upto=40):
    def run():
        detail = {}
        ok = True
        with mpmath.workdps(60):
            qm = mpmath.mpf(q)
            v = mpmath.sqrt(qm)
            for n in ns:
                worst = mpmath.mpf(0)
                for m, c in basic_function(n).coefficients(upto):
                    value = c.evaluate(qm, v=v)
                    bound = qm ** (m * mpmath.mpf(n + 2) / 2)
                    worst = max(worst, value / bound)
                    ok &= value <= bound
                detail[str(n)] = float(worst)
        return ok, {"max_ratio_to_bound": detail}
    return _timed("growth", "lemma-b-bound", run)


# -- 9. global check --------------------------------------------------------

GLOBAL_LAMBDAS = (1 / 3, 1 / 2, 1, 2, 3, 4)


def check_global(lams=GLOBAL_LAMBDAS, radius=10, tol=1e-8, route_tol=1e-8):
    def run():
        detail = {}
        ok = True
        for lam in lams:
            try:
                r = verify_theorem_n1(lam, radius, tol)
            except CheckFailed as e:
                r = e.report
            routes_ok = all(v["difference"] <= route_tol for v in r.residue_routes.values())
            ok &= r.ok and routes_ok
            detail[repr(lam)] = {"discrepancy": r.discrepancy, "routes_agree": routes_ok}
        return ok, detail
    return _timed("global", "theorem-main-n1", run)


def check_global_point(lam, radius, tol):
    def run():
        try:
            r = verify_theorem_n1(lam, radius, tol)
        except CheckFailed as e:
            r = e.report
        return r.ok, r.to_json()
    return _timed("global", "theorem-main-n1", run)


__all__ = [name for name in dir() if name.startswith("check_")] + [
    "CheckResult", "random_function", "random_symbol", "eisenstein_residue",
]
