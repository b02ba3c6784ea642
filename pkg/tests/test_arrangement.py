import logging
from fractions import Fraction

import pytest

from arrango.arrangement import (
    A_2n_1,
    A_4n1_1,
    A_lk,
    boolean,
    braid_A,
    canonical_normal,
    center,
    deletion,
    essentialize,
    flat_of,
    from_matrix,
    g314_sub,
    hyperplane,
    localization,
    product,
    quotient,
    refl_C,
    refl_D,
    restriction,
)
from arrango.io import parse_arrangement, write_arrangement
from arrango.lattice import build_lattice
from arrango.scalar import ParseError, cos_frac, sin_frac

F = Fraction


def test_canonical_normal():
    assert canonical_normal((F(0), F(-2), F(4))) == (0, 1, -2)
    assert canonical_normal((F(3), F(0))) == (1, 0)


def test_dedup_warns(caplog):
    with caplog.at_level(logging.WARNING):
        A = from_matrix(2, [(1, 0), (0, 1), (2, 0), (-1, 0)])
    assert len(A) == 2
    assert "proportional" in caplog.text


def test_zero_normal_rejected():
    with pytest.raises(ValueError):
        from_matrix(2, [(1, 0), (0, 0)])


def test_catalog_sizes():
    assert len(braid_A(3)) == 6 and braid_A(3).dim == 3
    assert len(refl_C(4)) == 16 and len(refl_D(4)) == 12
    assert len(A_lk(4, 3)) == 15
    assert [len(A_2n_1(n)) for n in (3, 4, 5)] == [6, 8, 10]
    assert [len(A_4n1_1(n)) for n in (2, 3)] == [9, 13]
    assert len(g314_sub()) == 18 and not g314_sub().ordered


def test_A2n1_is_real_in_cyclotomic_field():
    A = A_2n_1(4)
    assert A.ordered and A.field.order == 8
    # sides of the square are tangent lines x cos t + y sin t + 1 = 0
    assert canonical_normal((cos_frac(1, 8), sin_frac(1, 8), 1)) in A.normals


def test_restriction_and_localization():
    A = braid_A(3)
    H = hyperplane(A, 0)
    AH = restriction(A, H)
    assert AH.dim == 2 and len(AH) == 3
    X = flat_of(A, [0, 1])
    assert len(localization(A, X)) == build_lattice(A).size(build_lattice(A).index_of(X))
    Q = quotient(A, X)
    assert Q.dim == 2 and Q.is_essential
    assert center(A).rank == 3


def test_essentialize():
    A = from_matrix(3, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    E = essentialize(A)
    assert E.dim == 2 and len(E) == 3 and E.is_essential


def test_product_and_deletion():
    P = product(boolean(2), braid_A(2))
    assert P.dim == 4 and len(P) == 5
    assert len(deletion(P, 0)) == 4


def test_file_round_trip():
    for A in (A_2n_1(4), g314_sub(), refl_C(3), boolean(2)):
        text = write_arrangement(A)
        B = parse_arrangement(text)
        assert B == A
        assert write_arrangement(B) == text


def test_file_examples(caplog):
    A = parse_arrangement("dim 2\nfield QQ\n1 0\n0 1\n")
    assert A == boolean(2)
    B = parse_arrangement("dim 3\nfield cyclo 8\n# comment\ncos(1,8) sin(1,8) 0\n1 0 0\n")
    assert B.normals[0] == canonical_normal((cos_frac(1, 8), sin_frac(1, 8), 0))
    with caplog.at_level(logging.WARNING):
        C = parse_arrangement("dim 2\nfield QQ\n1 0\n0 1\n-3 0\n")
    assert len(C) == 2 and "line 5" in caplog.text


@pytest.mark.parametrize(
    "text,line",
    [
        ("dim 2\nfield QQ\n1 0 0\n", 3),
        ("dim 2\nfield QQ\n0 0\n", 3),
        ("dim 2\nfield QQ\n1 0\n1 (\n", 4),
        ("dim x\nfield QQ\n", 1),
        ("dim 2\nfield RR\n", 2),
        ("dim 2\nfield QQ\ncos(1,8) 1\n", 3),
    ],
)
def test_file_errors(text, line):
    with pytest.raises(ParseError) as e:
        parse_arrangement(text)
    assert e.value.line == line
