import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spcover.errors import InvalidInput, NumericalFailure
from spcover.roots import (
    monotone_root,
    r_parameters,
    solve_beta_gamma,
    solve_s1,
    solve_s1s2,
    solve_s2,
)

pairs = st.tuples(st.floats(0, 10), st.floats(0, 10)).map(lambda p: (max(p), min(p)))


def f1(s):
    return math.sinh(2 * s) ** 2 + math.sinh(s) ** 2


def f2(s):
    return math.sinh(2 * s) * math.sinh(s)


def test_examples():
    assert solve_s1(0, 0) == 0.0
    assert solve_s2(3.0, 0.0) == 0.0
    for s in (0.3, 1.0, 4.0):
        assert solve_s1(2 * s, s) == pytest.approx(s, abs=1e-12)
        assert solve_s2(2 * s, s) == pytest.approx(s, abs=1e-12)
        bg = solve_beta_gamma(s, s)
        assert bg.beta == pytest.approx(2 * s, abs=1e-12) and bg.gamma == pytest.approx(s, abs=1e-12)
    s1 = solve_s1(2, 0)
    assert abs(f1(s1) - math.sinh(2) ** 2) < 1e-12
    s2 = solve_s2(3, 1)
    assert abs(f2(s2) - math.sinh(3) * math.sinh(1)) < 1e-12


def test_precondition_errors():
    with pytest.raises(InvalidInput):
        solve_s1(1.0, 2.0)
    with pytest.raises(InvalidInput):
        solve_s2(-1.0, -2.0)
    with pytest.raises(InvalidInput):
        solve_s1(math.inf, 0.0)
    with pytest.raises(InvalidInput):
        solve_beta_gamma(-1.0, 0.0)
    with pytest.raises(NumericalFailure):
        solve_beta_gamma(0.1, 3.0)  # sinh(beta) sinh(gamma) cannot exceed half the sum of squares
    with pytest.raises(InvalidInput):
        r_parameters(1.0, 0.0, -1.0)


@given(pairs)
def test_solver_residuals_and_bounds(p):
    beta, gamma = p
    sol = solve_s1s2(beta, gamma)
    assert sol.residual1 <= 1e-10 and sol.residual2 <= 1e-10
    assert sol.s1 >= beta / 4 - 1e-12
    assert sol.s2 >= gamma / 2 - 1e-12


def test_monotone_root_against_bisection_oracle():
    target = 7.3
    s = monotone_root(f2, lambda x: 2 * math.cosh(2 * x) * math.sinh(x) + math.sinh(2 * x) * math.cosh(x), target, 5.0)
    lo, hi = 0.0, 5.0
    for _ in range(200):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if f2(mid) < target else (lo, mid)
    assert s == pytest.approx(lo, abs=1e-14)
    with pytest.raises(NumericalFailure):
        monotone_root(f2, lambda x: 1.0, 1e9, 1.0)


@given(pairs)
def test_round_trip(p):
    beta, gamma = p
    bg = solve_beta_gamma(solve_s1(beta, gamma), solve_s2(beta, gamma))
    # At beta = gamma the inversion is a square root of a vanishing gap, so
    # a rounding error e in s1, s2 becomes sqrt(e) in beta - gamma.
    tol = 1e-9 if beta - gamma >= 1e-3 else 1e-6
    assert abs(bg.gamma - gamma) <= tol
    assert abs(bg.beta - beta) <= tol


def test_rhosigma_bounds_grid():
    for s2 in np.linspace(1, 8, 30):
        for s1 in np.linspace(s2, 1.5 * s2, 30):
            bg = solve_beta_gamma(s1, s2)
            assert abs(bg.beta - 2 * s1) <= 1
            assert abs(bg.gamma + 2 * s1 - 3 * s2) <= 1


def test_r_parameter_examples():
    assert r_parameters(2.0, 0.0, 1.0)[0] == 0.0
    assert r_parameters(1.5, 1.5, 1.0)[0] == pytest.approx(1.0)


@given(pairs)
def test_r_parameter_bounds(p):
    beta, gamma = p
    s1 = solve_s1(beta, gamma)
    r1, r2 = r_parameters(beta, gamma, s1)
    assert 0 <= r1 <= 1 + 1e-15 and 0 <= r2 <= 1
    assert r2 <= 2 * math.exp(-s1)
    if beta >= gamma + 8:
        assert r1 <= 2 * math.exp(gamma - beta)
    # r2 is the r1-formula evaluated on the ray point (2 s1, s1)
    sb, sg = math.sinh(2 * s1), math.sinh(s1)
    if s1 > 0:
        assert r2 == pytest.approx(2 * sb * sg / (sb * sb + sg * sg), rel=1e-12)
