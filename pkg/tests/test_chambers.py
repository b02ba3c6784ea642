from fractions import Fraction

import pytest

from arrango import linalg
from arrango.arrangement import A_2n_1, A_4n1_1, A_lk, braid_A, generic, refl_C
from arrango.chambers import (
    c_coefficients,
    chamber_basis,
    chamber_graph,
    gallery_basis,
    is_basis_of,
    is_feasible_chamber,
    is_simplicial_geometric,
    reflect,
    sigma,
    walls,
)
from arrango.lattice import char_poly
from arrango.scalar import sign


@pytest.mark.parametrize(
    "A,count",
    [(braid_A(3), 24), (refl_C(3), 48), (A_2n_1(4), 40), (A_2n_1(5), 60), (generic(3, 5), 22), (refl_C(4), 384)],
)
def test_counts(A, count):
    G = chamber_graph(A)
    assert len(G) == count == abs(char_poly(A)(-1))


@pytest.mark.parametrize("A", [generic(3, 5), A_4n1_1(2), A_lk(4, 2)])
def test_walls_and_feasibility_by_lp(A):
    G = chamber_graph(A)
    A = G.arrangement
    for K in G.chambers[:12]:
        assert is_feasible_chamber(A, K.signs)
        for engine in ("fm", "simplex"):
            assert walls(A, K, engine) == K.walls
        for h in range(len(A)):
            flipped = list(K.signs)
            flipped[h] = -flipped[h]
            assert is_feasible_chamber(A, flipped) == (h in K.walls)


def test_interior_points():
    G = chamber_graph(A_2n_1(4))
    A = G.arrangement
    for K in G.chambers:
        p = G.interior_point(K)
        assert all(sign(linalg.dot(a, p)) == s for a, s in zip(A.normals, K.signs))


def test_simplicial_flags():
    assert is_simplicial_geometric(A_2n_1(6))
    assert not is_simplicial_geometric(generic(3, 5))


@pytest.mark.parametrize("A", [A_2n_1(4), A_4n1_1(2), A_lk(4, 3)])
def test_sigma_is_an_involution(A):
    G = chamber_graph(A)
    A = G.arrangement
    for K in G.chambers[:20]:
        B = chamber_basis(A, K)
        for i in range(len(B)):
            step = sigma(A, K, i, B)
            back = sigma(A, step.chamber, i, step.basis)
            assert back.chamber is K and back.basis == B


def test_rescaling_law():
    G = chamber_graph(refl_C(3))
    A = G.arrangement
    K = G.chambers[5]
    d = c_coefficients(A, K)
    lam = [Fraction(2), Fraction(1, 3), Fraction(5)]
    d2 = c_coefficients(A, K, [tuple(l * x for x in b) for l, b in zip(lam, d.basis)])
    for i in range(3):
        for j in range(3):
            if i != j:
                assert d2.c[i][j] == d.c[i][j] * lam[j] / lam[i]


@pytest.mark.parametrize("A", [A_2n_1(5), A_lk(4, 3)])
def test_roots_of_adjacent_chamber(A):
    G = chamber_graph(A)
    A = G.arrangement
    for K in G.chambers[:15]:
        B = chamber_basis(A, K)
        for i, h in enumerate(K.walls):
            Ki = G.neighbor(K, h)
            for beta in chamber_basis(A, Ki):
                x = linalg.solve(B, beta)
                if linalg.rank([beta, B[i]]) == 1:
                    assert sign(x[i]) < 0 and all(not x[k] for k in range(len(B)) if k != i)
                else:
                    assert all(not v or sign(v) > 0 for v in x)


def test_gallery_basis():
    G = chamber_graph(braid_A(3))
    A = G.arrangement
    K0 = G.chambers[0]
    B0 = chamber_basis(A, K0)
    gal, B = gallery_basis(A, K0, B0, [0, 1, 2])
    assert len(gal.chambers) == 4
    assert is_basis_of(A, gal.chambers[-1], B)
    with pytest.raises(ValueError):
        gallery_basis(A, K0, B0, [0, 0])


def test_reflect_exposes_diagonal():
    G = chamber_graph(refl_C(3))
    A = G.arrangement
    K = G.chambers[0]
    d = c_coefficients(A, K)
    assert reflect(d, 0)[0] == tuple(-x for x in d.basis[0])
    assert reflect(d, 0, diagonal=0)[0] == d.basis[0]
