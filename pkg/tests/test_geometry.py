from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bks.plucker_geometry import (
    NotSymplectic,
    SingularLevi,
    SymplecticMatrix,
    coset_index,
    default_rng,
    make,
    norm,
    omega,
    pluecker,
    random_derived_parabolic,
    random_integral,
    random_levi,
    random_symplectic,
    rational_unitary_symplectic,
)

seeds = st.integers(0, 2 ** 32)
ranks = st.integers(1, 3)
primes = st.sampled_from([2, 3, 5])


def test_identity_pluecker_n1():
    assert pluecker(make("identity", 1)).coords == (0, 1)


def test_constructors_validate():
    assert make("unipotent", 2, [[1, 2], [2, 3]]).is_symplectic()
    assert make("levi", 2, [[1, 2], [3, 4]]).is_symplectic()
    with pytest.raises(NotSymplectic):
        make("unipotent", 2, [[1, 2], [3, 4]])
    with pytest.raises(SingularLevi):
        make("levi", 2, [[1, 2], [2, 4]])
    with pytest.raises(NotSymplectic):
        SymplecticMatrix.from_rows([[1, 1], [0, 2]])
    with pytest.raises(TypeError):
        make("unipotent", 1, [[0.5]])


def test_torus_has_one_coordinate():
    t = make("siegel_torus", 2, Fraction(7), 1)
    nz = pluecker(t).nonzero()
    assert len(nz) == 1 and abs(next(iter(nz.values()))) == 7
    assert norm(t, 7) == Fraction(1, 7)


@pytest.mark.parametrize("c", range(-3, 4))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_torus_norm(p, c):
    t = make("siegel_torus", 2, p, c)
    assert norm(t, p) == Fraction(p) ** -c
    assert coset_index(t, p) == c


def test_identity_norm():
    for n in (1, 2, 3):
        assert norm(make("identity", n), 2) == 1
        assert coset_index(make("identity", n), 3) == 0


@given(seeds, ranks, primes)
def test_closure_under_products_and_inverses(seed, n, p):
    rng = default_rng(seed)
    g, h = random_symplectic(rng, n, p), random_integral(rng, n, p)
    assert (g @ h).is_symplectic()
    assert g.inverse().is_symplectic()
    assert (g @ g.inverse()) == make("identity", n)


@given(seeds, ranks, primes)
def test_norm_is_bi_invariant(seed, n, p):
    rng = default_rng(seed)
    g = random_symplectic(rng, n, p)
    u = random_derived_parabolic(rng, n)
    k = random_integral(rng, n, p)
    assert norm(u @ g @ k, p) == norm(g, p)


@given(seeds, ranks, primes, st.integers(-3, 3))
def test_coset_index_of_translated_torus(seed, n, p, c):
    rng = default_rng(seed)
    Z = [[Fraction(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(n)] for _ in range(n)]
    Z = [[Z[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
    g = make("unipotent", n, Z) @ make("siegel_torus", n, p, c) @ random_integral(rng, n, p)
    assert coset_index(g, p) == c


@given(seeds, ranks)
def test_levi_equivariance(seed, n):
    rng = default_rng(seed)
    m, x = random_levi(rng, n), random_symplectic(rng, n)
    assert pluecker(m @ x) == pluecker(x).scale(1 / omega(m))


@given(seeds, ranks)
def test_archimedean_invariance(seed, n):
    # left: compact part of [P,P]; right: the full maximal compact
    rng = default_rng(seed)
    g = random_symplectic(rng, n)
    k_left = rational_unitary_symplectic(rng, n, special_orthogonal=True)
    k_right = rational_unitary_symplectic(rng, n)
    assert k_right.is_symplectic()
    assert norm(k_left @ g @ k_right, "inf") == pytest.approx(norm(g, "inf"), rel=1e-12)


@given(seeds, ranks)
def test_archimedean_left_derived_parabolic(seed, n):
    rng = default_rng(seed)
    g = random_symplectic(rng, n)
    u = random_derived_parabolic(rng, n, bound=50)
    assert norm(u @ g, "inf") == pytest.approx(norm(g, "inf"), rel=1e-12)


def test_left_compact_outside_parabolic_moves_the_norm():
    # X is a quotient on the left by [P,P], not by K
    g = make("siegel_torus", 1, 2, -1)
    w = make("weyl", 1)
    assert norm(g, "inf") == pytest.approx(0.5)
    assert norm(w @ g, "inf") == pytest.approx(2.0)


def test_to_json():
    assert make("levi", 1, [[2]]).to_json() == [["2", "0"], ["0", "1/2"]]
