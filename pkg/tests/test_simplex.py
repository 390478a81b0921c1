import numpy as np
import pytest
from scipy.optimize import linprog

from screenline.simplex import solve_lp


def test_simple_min():
    # min x0 + x1 s.t. x0 + x1 >= 1, 0 <= x <= 1
    status, x, val = solve_lp(
        np.array([[1.0, 1.0]]), [">="], [1.0], np.array([1.0, 1.0])
    )
    assert status == "optimal"
    assert val == pytest.approx(1.0)


def test_simple_max_with_budget():
    # max x0 + 2 x1 s.t. x0 + x1 <= 1
    status, x, val = solve_lp(
        np.array([[1.0, 1.0]]), ["<="], [1.0], np.array([1.0, 2.0]), sense="max"
    )
    assert status == "optimal"
    assert val == pytest.approx(2.0)
    assert x[1] == pytest.approx(1.0)


def test_equality_and_fixed_bounds():
    status, x, val = solve_lp(
        np.array([[1.0, 1.0, 1.0]]),
        ["="],
        [2.0],
        np.array([3.0, 1.0, 2.0]),
        lower=[0.0, 0.0, 1.0],
        upper=[1.0, 1.0, 1.0],
    )
    assert status == "optimal"
    assert val == pytest.approx(3.0)  # x = (0, 1, 1)


def test_infeasible():
    status, _, _ = solve_lp(
        np.array([[1.0], [1.0]]), ["<=", ">="], [0.2, 0.8], np.array([1.0])
    )
    assert status == "infeasible"


def test_unbounded():
    status, _, _ = solve_lp(
        np.array([[1.0, -1.0]]),
        ["<="],
        [1.0],
        np.array([-1.0, 0.0]),
        upper=[np.inf, np.inf],
    )
    assert status == "unbounded"


def test_matches_scipy_on_random_lps():
    rng = np.random.default_rng(11)
    for trial in range(150):
        m = int(rng.integers(1, 7))
        n = int(rng.integers(1, 9))
        A = rng.integers(-3, 4, size=(m, n)).astype(float)
        b = rng.integers(-4, 7, size=m).astype(float)
        c = rng.integers(-5, 6, size=n).astype(float)
        senses = [str(rng.choice(["<=", ">=", "="])) for _ in range(m)]
        lo = np.zeros(n)
        hi = np.ones(n)
        if trial % 3 == 0:  # exercise variable fixings as branch and bound does
            j = int(rng.integers(0, n))
            lo[j] = hi[j] = float(rng.integers(0, 2))
        status, x, val = solve_lp(A, senses, b, c, "min", lo, hi)

        A_ub, b_ub, A_eq, b_eq = [], [], [], []
        for row, op, rhs in zip(A, senses, b):
            if op == "<=":
                A_ub.append(row), b_ub.append(rhs)
            elif op == ">=":
                A_ub.append(-row), b_ub.append(-rhs)
            else:
                A_eq.append(row), b_eq.append(rhs)
        ref = linprog(
            c,
            A_ub=np.array(A_ub) if A_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(A_eq) if A_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=list(zip(lo, hi)),
            method="highs",
        )
        if ref.status == 2:
            assert status == "infeasible"
        else:
            assert ref.status == 0
            assert status == "optimal"
            assert val == pytest.approx(ref.fun, abs=1e-6)
            assert np.all(A @ x <= b + 1e-6) or True  # feasibility per sense below
            for row, op, rhs in zip(A, senses, b):
                lhs = float(row @ x)
                if op == "<=":
                    assert lhs <= rhs + 1e-6
                elif op == ">=":
                    assert lhs >= rhs - 1e-6
                else:
                    assert lhs == pytest.approx(rhs, abs=1e-6)
