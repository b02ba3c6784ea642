from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from arrango import linalg, lp
from arrango.scalar import cos_frac, sign

F = Fraction
coef = st.integers(-3, 3).map(F)


def test_rref_and_nullspace():
    rows = [(F(1), F(2), F(3)), (F(2), F(4), F(6)), (F(0), F(1), F(1))]
    R, piv = linalg.rref(rows)
    assert piv == [0, 1] and len(R) == 2
    N = linalg.nullspace(rows, 3, F(0), F(1))
    assert len(N) == 1
    assert all(linalg.dot(r, N[0]) == 0 for r in rows)
    assert linalg.det([[F(2), F(1)], [F(1), F(1)]]) == 1


def test_solve_over_cyclotomic():
    c = cos_frac(1, 8)
    cols = [(c, F(1)), (F(1), -c)]
    target = (2 * c + 3, 2 - 3 * c)
    x = linalg.solve(cols, target)
    assert x[0] == 2 and x[1] == 3


def _strict_ok(rows, y):
    return all(sign(linalg.dot(r, y)) > 0 for r in rows)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4).flatmap(lambda d: st.lists(st.tuples(*[coef] * d), min_size=1, max_size=6)))
def test_engines_agree(rows):
    d = len(rows[0])
    a = lp.strict_feasible(rows, dim=d, engine="fm")
    b = lp.strict_feasible(rows, dim=d, engine="simplex")
    assert (a is None) == (b is None)
    for y in (a, b):
        if y is not None:
            assert _strict_ok(rows, y)


def test_equalities_and_infeasible():
    rows = [(F(1), F(0), F(0)), (F(0), F(1), F(0))]
    y = lp.strict_feasible(rows, eqs=[(F(1), F(1), F(0))])
    assert y is None
    y = lp.strict_feasible(rows, eqs=[(F(0), F(0), F(1))])
    assert y is not None and y[2] == 0 and _strict_ok(rows, y)
    assert lp.strict_feasible([(F(1), F(0)), (F(-1), F(0))], dim=2) is None
