from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import linprog

from herdability.simplex import solve_feasibility
from oracles import lp_feasible

small_int_matrices = st.tuples(st.integers(1, 5), st.integers(1, 6)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.integers(-3, 3)))


def min_l1(mat):
    t, q = mat.shape
    res = linprog(np.ones(2 * q), A_ub=-np.hstack([mat, -mat]), b_ub=-np.ones(t),
                  bounds=[(0, None)] * (2 * q), method="highs")
    return res.fun


def test_identity():
    res = solve_feasibility(np.eye(3))
    assert res.feasible
    np.testing.assert_allclose(res.alpha, np.ones(3))


def test_balanced_single_column_infeasible():
    res = solve_feasibility([[-1.0], [1.0]])
    assert not res.feasible
    assert res.phase1_objective > 0


def test_negative_column_uses_negative_alpha():
    res = solve_feasibility([[-2.0], [-4.0]])
    assert res.feasible
    np.testing.assert_allclose(res.alpha, [-0.5])


def test_zero_rows_infeasible():
    assert not solve_feasibility(np.zeros((2, 3))).feasible


def test_no_columns():
    assert not solve_feasibility(np.zeros((2, 0))).feasible


@settings(max_examples=300, deadline=None)
@given(small_int_matrices)
def test_agrees_with_highs(mat):
    res = solve_feasibility(mat.astype(float))
    assert res.feasible == lp_feasible(mat, range(1, mat.shape[0] + 1))
    if res.feasible:
        assert np.all(mat @ res.alpha >= 1 - 1e-9)
        assert np.sum(np.abs(res.alpha)) == pytest.approx(min_l1(mat), rel=1e-7, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(small_int_matrices)
def test_exact_agrees_with_float(mat):
    fl = solve_feasibility(mat.astype(float))
    ex = solve_feasibility(mat, exact=True)
    assert ex.exact
    assert ex.feasible == fl.feasible
    if ex.feasible:
        assert all(isinstance(x, Fraction) for x in ex.alpha)
        assert all(v >= 1 for v in mat.astype(object) @ ex.alpha)
        assert ex.phase1_objective == 0


def test_degenerate_problem_terminates():
    # many parallel and repeated constraints create degenerate vertices
    mat = np.array([[1, 1, 0], [1, 1, 0], [2, 2, 0], [1, 0, 1], [0, 1, -1], [1, 1, 0]], float)
    res = solve_feasibility(mat)
    assert res.feasible
    assert np.all(mat @ res.alpha >= 1 - 1e-9)


def test_pivot_limit():
    with pytest.raises(RuntimeError):
        solve_feasibility(np.array([[1.0, -1.0], [-1.0, 2.0]]), max_pivots=0)
