"""Acceptance criteria 1-12.

Each test prints one ``[PASS]``/``[FAIL]`` line.  All comparisons are exact
(rational or cyclotomic arithmetic), so the pinned tolerance is zero
throughout.
"""

from functools import cache

import pytest

from arrango import checks
from arrango.arrangement import A_2n_1, A_4n1_1, g314_A2, g314_C, g314_D, g314_sub, product, refl_C, refl_D
from arrango.chambers import chamber_graph
from arrango.lattice import CharPoly, char_poly, is_irreducible, is_supersolvable, s_value

TOL = 0  # exact equality everywhere


@cache
def suite(name):
    return checks.run(name)


def report(n, ok, text, lines=()):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}")
    if not ok:
        for line in lines:
            if line.startswith("FAIL"):
                print("      " + line)
    return ok


def P(*roots):
    return CharPoly.from_roots(list(roots))


def test_criterion_01_s_values(capsys):
    A1, A2 = g314_C(), g314_A2()
    got = [s_value(g314_sub()), s_value(A1), s_value(g314_D()), s_value(A2), s_value(product(A1, A2))]
    r = suite("s-values")
    pinned = got == [0, 4, 4, -4, 0] and char_poly(A1) == char_poly(A2) == P(1, 4, 5)
    with capsys.disabled():
        ok = report(1, r.passed and pinned, "s-values 0, 4, 4, -4, 0 and chi = (t-1)(t-4)(t-5) (exact)", r.lines)
    assert ok


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_chamber_count_pinned(n):
    A = A_2n_1(n)
    assert len(chamber_graph(A)) == abs(char_poly(A)(-1)) == 2 * n * (n + 1)


def test_criterion_02_A2n1(capsys):
    r = suite("A2n1")
    with capsys.disabled():
        ok = report(2, r.passed, "A(2n,1), n=3..8: lattice, modular pencil, simplicial, 2n(n+1) chambers", r.lines)
    assert ok


def test_criterion_03_A4n11(capsys):
    r = suite("A4n11")
    sizes = [len(A_4n1_1(n)) for n in (2, 3, 4)] == [9, 13, 17]
    with capsys.disabled():
        ok = report(3, r.passed and sizes, "A(4n+1,1), n=2..4: rank-2 multiset, supersolvable, simplicial", r.lines)
    assert ok


def test_criterion_04_lattice_A91(capsys):
    r = suite("lattice-A91")
    pinned = char_poly(A_4n1_1(2)) == P(1, 3, 5) == char_poly(refl_C(3))
    with capsys.disabled():
        ok = report(4, r.passed and pinned, "chi(A(9,1)) = (t-1)(t-3)(t-5); L(A(9,1)) ~ L(C3); L(A(6,1)) ~ L(A3)", r.lines)
    assert ok


def test_criterion_05_simplicial_equivalence(capsys):
    r = suite("simplicial-equivalence")
    enough = len(checks.real_catalog()) >= 15
    with capsys.disabled():
        ok = report(5, r.passed and enough, f"geometric simplicial <=> s = 0 on {len(checks.real_catalog())} instances", r.lines)
    assert ok


def test_criterion_06_rank45_instances(capsys):
    r = suite("rank45-instances")
    D4 = refl_D(4)
    negative = is_supersolvable(D4) is None and is_irreducible(D4)[0]
    with capsys.disabled():
        ok = report(6, r.passed and negative, "A(A_l), A(C_l), A_l^(l-1), l=4,5 crystallographic with table types; D4 not supersolvable", r.lines)
    assert ok


@pytest.mark.parametrize("which", ["A61", "A81", "A91"])
def test_criterion_07_graph_change(capsys, which):
    r = suite(f"graph-change-{which}")
    with capsys.disabled():
        ok = report(7, r.passed, f"graph-change diagram of {which} matches the reference", r.lines)
    assert ok


def test_criterion_08_reflection_data(capsys):
    r = suite("reflection-data")
    with capsys.disabled():
        ok = report(8, r.passed, "det S_i = -1, c_ij <= 0, m=2 <=> c=0, m=3 => c_ji = 1/c_ij, zero persistence", r.lines)
    assert ok


def test_criterion_09_hansen_motzkin(capsys):
    r = suite("hansen-motzkin")
    with capsys.disabled():
        ok = report(9, r.passed, "Hansen-Motzkin witness on every essential real catalog instance of rank >= 3", r.lines)
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="bound fails for A(13,1): the three axes through hexagon vertices restrict to 4 < 5 points",
)
def test_criterion_10_restriction_bound(capsys):
    r = suite("restriction-bound")
    bound_lines = [line for line in r.lines if "bound" in line]
    ok = all(line.startswith("ok") for line in bound_lines)
    with capsys.disabled():
        report(10, ok, "|A^H| >= ceil(|A|/4) + 1 for A(2n,1), n=3..6 and A(4m+1,1), m=2,3", bound_lines)
    assert ok


def test_criterion_10_modular_complement(capsys):
    r = suite("restriction-bound")
    lines = [line for line in r.lines if "modular" in line]
    ok = len(lines) == 6 and all(line.startswith("ok") for line in lines)
    with capsys.disabled():
        report(10, ok, "|A^H| = |A_X| for modular X and H outside A_X", lines)
    assert ok


def test_criterion_11_coxeter_graphs(capsys):
    r = suite("coxeter-graphs")
    with capsys.disabled():
        ok = report(11, r.passed, "rank-3 graph list, localization and restriction subgraphs", r.lines)
    assert ok


def test_criterion_12_product_laws(capsys):
    r = suite("product-laws")
    with capsys.disabled():
        ok = report(12, r.passed, "chi, s, supersolvable and simplicial product laws on 20 random pairs", r.lines)
    assert ok
