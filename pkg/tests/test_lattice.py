from fractions import Fraction
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrango.arrangement import (
    A_2n_1,
    A_4n1_1,
    A_lk,
    Arrangement,
    boolean,
    braid_A,
    deletion,
    flat_of,
    from_matrix,
    generic,
    hyperplane,
    localization,
    product,
    refl_C,
    refl_D,
    restriction,
)
from arrango.lattice import (
    CharPoly,
    blocks,
    build_lattice,
    char_poly,
    hansen_motzkin_witness,
    is_irreducible,
    is_simplicial_rank3,
    is_supersolvable,
    lattice_isomorphic,
    s_value,
)

SMALL = [boolean(2), braid_A(2), braid_A(3), refl_C(2), refl_C(3), generic(3, 4), A_lk(3, 1), A_2n_1(3)]


def P(*roots):
    return CharPoly.from_roots(list(roots))


def test_braid_and_reflection_polys():
    assert char_poly(braid_A(3)) == P(1, 2, 3)
    assert char_poly(braid_A(4)) == P(1, 2, 3, 4)
    assert char_poly(refl_C(3)) == P(1, 3, 5)
    assert char_poly(refl_D(4)) == P(1, 3, 3, 5)
    assert char_poly(boolean(3)) == P(1, 1, 1)


def test_charpoly_helpers():
    chi = P(1, 3, 5)
    assert chi(0) == -15 and chi(1) == 0
    assert chi.integer_roots() == [1, 3, 5]
    assert str(chi) == "(t-1)*(t-3)*(t-5)"
    assert char_poly(generic(3, 5)).integer_roots() is None


@pytest.mark.parametrize("A", [braid_A(3), refl_C(3), A_2n_1(4), generic(3, 5), A_lk(4, 2)])
def test_deletion_restriction(A):
    chi = char_poly(A)
    for h in range(0, len(A), max(1, len(A) // 4)):
        D = deletion(A, h)
        R = restriction(A, hyperplane(A, h))
        cd, cr = char_poly(D), char_poly(R)
        assert cd.degree == A.dim and cr.degree == A.dim - 1
        assert all(chi(t) == cd(t) - cr(t) for t in range(-3, A.dim + 3))


@settings(max_examples=12, deadline=None)
@given(st.integers(0, len(SMALL) - 1), st.integers(0, len(SMALL) - 1))
def test_product_laws(i, j):
    A1, A2 = SMALL[i], SMALL[j]
    Pr = product(A1, A2)
    c1, c2 = char_poly(A1), char_poly(A2)
    assert char_poly(Pr) == c1 * c2
    assert s_value(Pr) == abs(c2(-1)) * s_value(A1) + abs(c1(-1)) * s_value(A2)
    assert (is_supersolvable(Pr) is not None) == (is_supersolvable(A1) is not None and is_supersolvable(A2) is not None)
    irr, bl = is_irreducible(Pr)
    assert not irr and len(bl) >= 2


def test_restriction_localization_of_product():
    A1, A2 = braid_A(3), refl_C(2)
    Pr = product(A1, A2)
    n1 = len(A1)
    X1, X2 = flat_of(A1, [0, 1]), flat_of(A2, [0])
    X = flat_of(Pr, [0, 1, n1 + 0])
    assert len(localization(Pr, X)) == len(localization(A1, X1)) + len(localization(A2, X2))
    assert len(restriction(Pr, X)) == len(restriction(A1, X1)) + len(restriction(A2, X2))
    assert char_poly(restriction(Pr, X)) == char_poly(restriction(A1, X1)) * char_poly(restriction(A2, X2))


@pytest.mark.parametrize("A", [braid_A(4), refl_C(4), A_lk(4, 3), A_2n_1(5), A_4n1_1(2)])
def test_supersolvable_exponents_factor(A):
    ss = is_supersolvable(A)
    assert ss is not None
    assert char_poly(A) == P(*ss.exponents)
    assert sum(ss.exponents) == len(A)


def test_not_supersolvable():
    assert is_supersolvable(refl_D(4)) is None
    assert is_supersolvable(generic(3, 5)) is None


def test_modular_flats():
    L = build_lattice(A_2n_1(5))
    pencils = [x for x in L.indices_by_rank[2] if L.size(x) == 5]
    assert len(pencils) == 1 and L.is_modular_index(pencils[0])
    assert L.is_modular_index(L.top) and L.is_modular_index(0)
    L = build_lattice(generic(3, 5))
    assert not any(L.is_modular_index(x) for x in L.indices_by_rank[2])


def test_s_value_rank3_agrees_with_count():
    for A in (braid_A(3), refl_C(3), A_2n_1(5), generic(3, 5), deletion(A_4n1_1(2), 0)):
        assert is_simplicial_rank3(A) == (s_value(A) == 0)


def test_irreducible_blocks():
    assert is_irreducible(braid_A(3))[0]
    assert not is_irreducible(boolean(3))[0]
    assert blocks(product(braid_A(2), braid_A(2))) == [[0, 1, 2], [3, 4, 5]]
    assert not is_irreducible(Arrangement(2, boolean(1).field, ()))[0]
    assert is_irreducible(boolean(1))[0]


def test_lattice_isomorphism_under_relabelling():
    A = refl_C(3)
    rng = random.Random(7)
    normals = list(A.normals)
    rng.shuffle(normals)
    # a linear change of coordinates keeps the lattice
    M = [(1, 2, 0), (0, 1, 3), (1, 0, 1)]
    image = [tuple(sum(Fraction(M[r][c]) * v[c] for c in range(3)) for r in range(3)) for v in normals]
    B = from_matrix(3, image)
    assert lattice_isomorphic(build_lattice(A), build_lattice(B)) is not None
    assert lattice_isomorphic(build_lattice(A), build_lattice(A_2n_1(4))) is None
    assert lattice_isomorphic(build_lattice(A_4n1_1(2)), build_lattice(refl_C(3))) is not None


def test_hansen_motzkin_on_braid():
    A = braid_A(4)
    X, Y, h = hansen_motzkin_witness(A)
    assert X.rank == 3 and Y.rank == 2
    assert set(X.containing) == set(Y.containing) | {h}
