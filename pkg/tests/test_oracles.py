import pytest
from hypothesis import given, strategies as st

from bks.exact_algebra import q_power
from bks.oracles import (
    DomainError,
    classical_fourier_of_lattices,
    classical_fourier_pattern,
    lattice_combination,
    rank_one_grid,
    rank_one_intertwining,
    tail_bound,
)
from bks.schwartz_nonarch import basic_function, fourier, indicator


def test_grid_passes():
    reports = rank_one_grid(40)
    assert len(reports) == 120
    assert all(r.ok for r in reports)


def test_bound_is_sharp_for_trivial_character():
    r = rank_one_intertwining(2, 1, 1, 20)
    assert r.error == pytest.approx(r.tailBound, rel=1e-12)


def test_oscillating_character_beats_the_bound():
    r = rank_one_intertwining(3, -1, 1, 20)
    assert r.error < r.tailBound


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11]),
       st.sampled_from([1, -1, 1j, -1j]),
       st.floats(0.2, 3), st.floats(-5, 5), st.integers(5, 60))
def test_shell_sum_within_tail_bound(q, z, re, im, K):
    r = rank_one_intertwining(q, z, complex(re, im), K)
    assert r.ok
    assert r.tailBound == pytest.approx(tail_bound(q, re, K), rel=1e-9)


@pytest.mark.parametrize("args", [(2, 1, -0.5, 10), (1, 1, 1, 10), (2, 2, 1, 10), (2, 1, 1, 0)])
def test_domain(args):
    with pytest.raises(DomainError):
        rank_one_intertwining(*args)


def test_report_serializes():
    doc = rank_one_intertwining(5, 1j, 0.75 + 0.5j, 10).to_json()
    assert doc["z"] == [0.0, 1.0] and doc["shells"] == 10


@pytest.mark.parametrize("c", range(-3, 4))
def test_shifted_basic_matches_plane_transform(c):
    assert fourier(basic_function(1).shift(c)) == classical_fourier_pattern(c)


def test_indicator_transform_against_lattices():
    # 1_0 = 1_{Z_p^2} - 1_{p Z_p^2}
    weights = {0: 1, 1: -1}
    assert lattice_combination(weights) == indicator(1, 0)
    ft = classical_fourier_of_lattices(weights)
    assert fourier(indicator(1, 0)) == ft
    assert ft.coefficient(-1) == -q_power(-2)


def test_pattern_domain():
    with pytest.raises(DomainError):
        classical_fourier_pattern(11)
