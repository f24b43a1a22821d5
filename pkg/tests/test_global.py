import math
from fractions import Fraction

import pytest

from bks.global_check import (
    CheckFailed,
    DomainError,
    eisenstein_residue,
    epstein_zeta,
    finite_factor,
    lattice_sum,
    residue_route_a,
    residue_route_b,
    verify_theorem_n1,
)


def test_epstein_zeta_against_dirichlet_product():
    import mpmath
    for w in (2, 3, 1.5):
        expected = 4 * mpmath.zeta(w) * mpmath.dirichlet(w, [0, 1, 0, -1])
        assert float(epstein_zeta(w)) == pytest.approx(float(expected), rel=1e-12)


def test_finite_factor_on_and_off_the_lattice():
    assert finite_factor(3, 4) == 1
    assert finite_factor(0, 7) == 1
    assert finite_factor(Fraction(1, 2), 1) == 0
    assert finite_factor(Fraction(1, 15), 0) == 0


def test_lattice_sums_at_lambda_four():
    s_phi, s_fphi, _ = lattice_sum(4, 8)
    # theta(4)^2 - 1 and (theta(1/4)^2 - 1)/4
    assert s_phi - s_fphi == pytest.approx(-0.75, abs=1e-10)


def test_radius_convergence():
    a = lattice_sum(1, 8, check_finite=False)
    b = lattice_sum(1, 10, check_finite=False)
    assert abs(a[0] - b[0]) < 1e-12 and abs(a[1] - b[1]) < 1e-12


@pytest.mark.parametrize("lam", [1 / 3, 2, 4])
def test_residue_scaling(lam):
    res_phi, res_fphi, routes = eisenstein_residue(lam)
    assert res_phi == pytest.approx(1 / lam, rel=1e-9)
    assert res_fphi == pytest.approx(1, rel=1e-9)
    for r in routes.values():
        assert r["difference"] < 1e-8


def test_routes_agree_independently():
    assert residue_route_a(1.7) == pytest.approx(residue_route_b(1.7), rel=1e-9)


def test_theorem_at_lambda_one_half():
    r = verify_theorem_n1(0.5, 10, 1e-8)
    assert r.ok and r.discrepancy < 1e-8
    doc = r.to_json()
    assert doc["lambda"] == 0.5 and doc["ok"]


def test_small_radius_fails_the_check():
    with pytest.raises(CheckFailed) as info:
        verify_theorem_n1(0.2, 5, 1e-9)
    assert not info.value.report.ok


@pytest.mark.parametrize("kwargs", [dict(lam=0.1), dict(lam=9), dict(lam=1, radius=4), dict(lam=1, tol=1e-12)])
def test_domain(kwargs):
    with pytest.raises(DomainError):
        verify_theorem_n1(**kwargs)
