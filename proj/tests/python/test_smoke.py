"""End-to-end smoke tests for the hopx Python bindings."""

import numpy as np
import pytest

import hopx


def random_psd(rng, n):
    g = rng.standard_normal((n, n))
    a = g.T @ g / n
    return 0.5 * (a + a.T)


def test_catalog_prox_values():
    l1 = hopx.L1Norm(3)
    c = np.array([3.0, -0.5, 2.0])
    np.testing.assert_allclose(l1.prox(1.0, c), [2.0, 0.0, 1.0], atol=1e-15)

    lin = hopx.LinearFunction(np.array([1.0, 2.0]))
    np.testing.assert_allclose(
        lin.prox(0.5, np.array([1.0, 1.0])), [0.5, 0.0], atol=1e-15
    )

    point = hopx.PointIndicator(np.array([4.0]))
    np.testing.assert_allclose(point.prox(7.0, np.array([0.0])), [4.0])

    quad = hopx.QuadraticFunction(np.eye(2), np.zeros(2))
    np.testing.assert_allclose(
        quad.prox(1.0, np.array([2.0, -2.0])), [1.0, -1.0], atol=1e-15
    )


def test_solve_matches_oracle():
    rng = np.random.default_rng(5)
    n = 6
    quad = hopx.QuadraticFunction(random_psd(rng, n), rng.standard_normal(n))
    c = rng.standard_normal(n)
    problem = hopx.HopProblem(quad, 1.0, 3.0, c)

    config = hopx.SolverConfig()
    config.tol = 1e-12
    report = hopx.solve_hop(problem, config)
    star = hopx.oracle_quadratic_hop(quad, 1.0, 3.0, c, tol=1e-10)

    assert report.converged
    assert np.linalg.norm(report.x_final - star.x_star) < 1e-6
    assert hopx.kkt_residual(problem, report.x_final) < 1e-8
    gap = hopx.weak_duality_gap(problem, report.x_final, report.lambda_final)
    assert -1e-10 <= gap < 1e-6


def test_bisection_agrees_with_fixed_point():
    rng = np.random.default_rng(11)
    n = 5
    quad = hopx.QuadraticFunction(random_psd(rng, n), rng.standard_normal(n))
    c = rng.standard_normal(n)

    bi = hopx.solve_bisection_p2(quad, c, 1.0)
    fp = hopx.solve_hop(hopx.HopProblem(quad, 1.0, 2.0, c))

    assert bi.converged and fp.converged
    assert np.linalg.norm(bi.x_final - fp.x_final) < 1e-6
    widths = bi.bisection.widths
    assert all(b == 0.5 * a for a, b in zip(widths, widths[1:]))


def test_outer_driver_decreases_objective():
    l1 = hopx.L1Norm(4)
    x0 = np.array([5.0, -3.0, 0.5, 2.0])
    config = hopx.SolverConfig()
    xs = hopx.run_hoppa(l1, 1.0, 2.0, x0, 5, config)
    values = [float(np.abs(x).sum()) for x in xs]
    assert values[-1] < values[0]


def test_exception_mapping():
    # Numerical breakdown surfaces as ArithmeticError.
    quad = hopx.QuadraticFunction(np.eye(2), np.zeros(2))
    problem = hopx.HopProblem(quad, 1.0, 1e9, np.array([5.0, 5.0]))
    config = hopx.SolverConfig()
    config.lambda0_strategy = hopx.Lambda0Strategy.GIVEN
    config.lambda0 = np.array([1e305, 0.0])
    with pytest.raises(ArithmeticError):
        hopx.solve_hop(problem, config)

    # A failed certificate surfaces as AssertionError.
    rng = np.random.default_rng(3)
    quad2 = hopx.QuadraticFunction(random_psd(rng, 4), rng.standard_normal(4))
    c = rng.standard_normal(4)
    star = hopx.oracle_quadratic_hop(quad2, 1.0, 2.0, c, tol=1e-10)
    config2 = hopx.SolverConfig()
    config2.tol = 1e-14
    config2.lambda0_strategy = hopx.Lambda0Strategy.GIVEN
    config2.lambda0 = 2.0 * star.lambda_star
    report = hopx.solve_hop(hopx.HopProblem(quad2, 1.0, 2.0, c), config2)
    with pytest.raises(AssertionError):
        hopx.check_contraction(report, 50.0 * star.lambda_star, 2.0)

    # Bracketing a stationary instance surfaces as ValueError.
    a = random_psd(rng, 3)
    c0 = rng.standard_normal(3)
    stationary = hopx.QuadraticFunction(a, -a @ c0)
    with pytest.raises(ValueError):
        hopx.find_bracket(stationary, c0, 1.0, 1.0)

    # Invalid problem data surfaces as ValueError from validation.
    with pytest.raises(ValueError):
        hopx.HopProblem(quad, -1.0, 2.0, np.zeros(2))


def test_ip_map_and_conjugate():
    x = np.array([3.0, 4.0])
    np.testing.assert_allclose(
        np.linalg.norm(hopx.ip_map(x, 2.0)), np.sqrt(5.0), rtol=1e-14
    )
    lam = np.array([1.0, -2.0])
    c = np.array([0.5, 0.5])
    conj = hopx.power_norm_conjugate(lam, 2.0, 3.0, c)
    y_star = c + 2.0 ** (-1.0 / 3.0) * hopx.ip_map(lam, 3.0)
    attained = lam @ y_star - 2.0 / 4.0 * np.linalg.norm(y_star - c) ** 4
    assert abs(conj - attained) < 1e-10


def test_sandwich_check():
    l1 = hopx.L1Norm(3)
    c = np.array([1.0, -2.0, 0.5])
    pairs = [(0.1, 0.3), (0.5, 2.0), (1.0, 1.5)]
    ok, diagnostic = hopx.check_T_sandwich(l1, c, pairs)
    assert ok, diagnostic
