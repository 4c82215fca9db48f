// Fixed-point solver, residual metric, contraction certificates, and the
// outer proximal-point driver.

#include <doctest.h>

#include <Eigen/Cholesky>
#include <cmath>

#include "hopx/functions.hpp"
#include "hopx/oracle.hpp"
#include "hopx/rng.hpp"
#include "hopx/solver.hpp"

using namespace hopx;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Matrix random_psd(NormalSampler& rng, Index n) {
  const Matrix G = rng.normal_matrix(n, n);
  const Matrix A = (G.transpose() * G / static_cast<double>(n)).eval();
  return 0.5 * (A + A.transpose());
}

SolverConfig tight_config() {
  SolverConfig config;
  config.tol = 1e-14;
  config.max_iters = 400;
  return config;
}

}  // namespace

// ---------------------------------------------------------------------------
// solve_hop closed-form cases

TEST_CASE("solve_hop linear function converges in one iteration") {
  NormalSampler rng(41);
  for (const double p : {1.5, 2.0, 3.0}) {
    const Vector a = rng.normal_vector(6);
    const Vector c = rng.normal_vector(6);
    const double sigma = 2.0;
    const LinearFunction f(a);
    const HopProblem problem(f, sigma, p, c);
    SolverConfig config;
    config.tol = 1e-12;
    const SolveReport report = solve_hop(problem, config);

    CHECK(report.converged);
    CHECK(report.iterations == 1);
    CHECK((report.lambda_final - a).norm() <= 1e-12 * (1.0 + a.norm()));
    const Vector x_expected =
        c - std::pow(sigma, -1.0 / p) * ip_map(a, p);
    CHECK((report.x_final - x_expected).norm() <= 1e-12 * (1.0 + c.norm()));
  }
}

TEST_CASE("solve_hop one-dimensional linear fixture lands at -1") {
  const LinearFunction f(vec({1.0}));
  const HopProblem problem(f, 1.0, 2.0, vec({0.0}));
  const SolveReport report = solve_hop(problem, SolverConfig{});
  CHECK(report.converged);
  CHECK(report.x_final[0] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("solve_hop stationary quadratic center is exact") {
  // b = -Ac makes c the unconstrained minimizer of f; the dual solution is 0
  // and with a small zero threshold the solver returns x = c exactly.
  NormalSampler rng(42);
  const Matrix A = random_psd(rng, 8);
  const Vector c = rng.normal_vector(8);
  const QuadraticFunction q(A, -A * c);
  const HopProblem problem(q, 1.0, 2.0, c);
  SolverConfig config;
  config.zero_tol = 1e-10;
  const SolveReport report = solve_hop(problem, config);

  CHECK(report.converged);
  CHECK(report.iterations == 1);
  CHECK((report.x_final - c).norm() == 0.0);
  CHECK(report.lambda_final.norm() == 0.0);
  CHECK(report.trace.size() == 2);
}

TEST_CASE("solve_hop l1 at the origin reaches the zero dual exactly") {
  const L1Norm f(4);
  const HopProblem problem(f, 1.0, 2.0, Vector::Zero(4));

  SUBCASE("auto start converges in one iteration") {
    const SolveReport report = solve_hop(problem, SolverConfig{});
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    CHECK((report.x_final.array() == 0.0).all());
    CHECK(report.lambda_final.norm() == 0.0);
  }

  SUBCASE("one productive step from a nonzero start lands exactly on zero") {
    SolverConfig config;
    config.lambda0_strategy = Lambda0Strategy::kGiven;
    config.lambda0 = vec({1.0, -2.0, 0.5, 3.0});
    const SolveReport report = solve_hop(problem, config);
    CHECK(report.converged);
    CHECK(report.trace[1].lambda_norm == 0.0);
    CHECK(report.lambda_final.norm() == 0.0);
    CHECK((report.x_final.array() == 0.0).all());
  }
}

TEST_CASE("solve_hop agrees with the quadratic oracle across p and sigma") {
  NormalSampler rng(43);
  for (const double p : {1.0, 2.0, 3.0}) {
    for (const double sigma : {0.5, 1.0, 4.0}) {
      const Matrix A = random_psd(rng, 6);
      const Vector b = rng.normal_vector(6);
      const Vector c = rng.normal_vector(6);
      const QuadraticFunction q(A, b);
      const HopProblem problem(q, sigma, p, c);
      const SolveReport report = solve_hop(problem, tight_config());
      const OracleResult star = oracle_quadratic_hop(q, sigma, p, c, 1e-10);
      CHECK(report.converged);
      CHECK((report.x_final - star.x_star).norm() <= 1e-8);
    }
  }
}

TEST_CASE("solve_hop is well posed: different starts, same answer") {
  NormalSampler rng(44);
  const Matrix A = random_psd(rng, 7);
  const QuadraticFunction q(A, rng.normal_vector(7));
  const HopProblem problem(q, 1.0, 3.0, rng.normal_vector(7));

  SolverConfig config;
  config.tol = 1e-12;
  config.max_iters = 400;
  const SolveReport r1 = solve_hop(problem, config);

  config.lambda0_strategy = Lambda0Strategy::kGiven;
  config.lambda0 = 7.0 * Vector::Ones(7);
  const SolveReport r2 = solve_hop(problem, config);

  config.lambda0_strategy = Lambda0Strategy::kZero;
  const SolveReport r3 = solve_hop(problem, config);

  CHECK(r1.converged);
  CHECK(r2.converged);
  CHECK(r3.converged);
  CHECK((r1.x_final - r2.x_final).norm() <= 1e-11);
  CHECK((r1.x_final - r3.x_final).norm() <= 1e-11);
}

TEST_CASE("solve_hop primal-dual consistency at convergence") {
  NormalSampler rng(45);
  const QuadraticFunction q(random_psd(rng, 5), rng.normal_vector(5));
  for (const double p : {2.0, 3.0}) {
    const HopProblem problem(q, 2.0, p, rng.normal_vector(5));
    const SolveReport report = solve_hop(problem, tight_config());
    REQUIRE(report.converged);
    const Vector d = problem.c - report.x_final;
    const Vector lambda_from_x =
        problem.sigma * std::pow(d.norm(), p - 1.0) * d;
    CHECK((report.lambda_final - lambda_from_x).norm() <=
          1e-12 * (1.0 + report.lambda_final.norm()));
  }
}

TEST_CASE("solve_hop trace bookkeeping") {
  NormalSampler rng(46);
  const QuadraticFunction q(random_psd(rng, 5), rng.normal_vector(5));
  const HopProblem problem(q, 1.0, 2.0, rng.normal_vector(5));
  const SolveReport report = solve_hop(problem, tight_config());

  CHECK(report.trace.size() ==
        static_cast<std::size_t>(report.iterations) + 1);
  for (std::size_t k = 0; k < report.trace.size(); ++k) {
    const TraceRecord& rec = report.trace[k];
    CHECK(rec.iter == static_cast<int>(k));
    CHECK(std::isfinite(rec.objective));
    CHECK(rec.kkt_residual >= 0.0);
    CHECK(rec.elapsed_ms >= 0.0);
    if (rec.lambda_norm > 0.0) {
      CHECK(rec.t_k ==
            doctest::Approx(std::pow(rec.lambda_norm, 1.0 / problem.p - 1.0))
                .epsilon(1e-15));
      CHECK(rec.sigma_k == doctest::Approx(rec.t_k).epsilon(1e-15));  // σ=1
    } else {
      CHECK(rec.t_k == 0.0);
      CHECK(rec.sigma_k == 0.0);
    }
  }
  CHECK(report.trace.back().lambda_norm ==
        doctest::Approx(report.lambda_final.norm()).epsilon(1e-15));
}

TEST_CASE("solve_hop hits the iteration cap gracefully") {
  NormalSampler rng(47);
  const QuadraticFunction q(random_psd(rng, 5), rng.normal_vector(5));
  const HopProblem problem(q, 1.0, 4.0, rng.normal_vector(5));
  SolverConfig config;
  config.tol = 1e-15;
  config.max_iters = 3;
  const SolveReport report = solve_hop(problem, config);
  CHECK(!report.converged);
  CHECK(report.iterations == 3);
  CHECK(report.trace.size() == 4);
}

TEST_CASE("solve_hop reports step-size underflow as a numerical error") {
  const L1Norm f(2);
  const HopProblem problem(f, 1.0, 1e9, vec({5.0, 5.0}));
  SolverConfig config;
  config.lambda0_strategy = Lambda0Strategy::kGiven;
  config.lambda0 = vec({1e305, 0.0});
  CHECK_THROWS_AS(solve_hop(problem, config), NumericalError);
}

TEST_CASE("solve_hop rejects a mismatched explicit start") {
  const L1Norm f(3);
  const HopProblem problem(f, 1.0, 2.0, Vector::Ones(3));
  SolverConfig config;
  config.lambda0_strategy = Lambda0Strategy::kGiven;
  config.lambda0 = Vector::Ones(2);
  CHECK_THROWS_AS(solve_hop(problem, config), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// kkt_residual

TEST_CASE("kkt_residual closed-form cases") {
  // Stationary quadratic center.
  NormalSampler rng(48);
  const Matrix A = random_psd(rng, 4);
  const Vector c = rng.normal_vector(4);
  const QuadraticFunction q(A, -A * c);
  // Ac + b vanishes analytically; only rounding noise from the matrix-vector
  // product remains.
  CHECK(kkt_residual(HopProblem(q, 1.0, 2.0, c), c) <= 1e-12);

  // l1 at the origin.
  const L1Norm l1(4);
  CHECK(kkt_residual(HopProblem(l1, 1.0, 2.0, Vector::Zero(4)),
                     Vector::Zero(4)) == 0.0);

  // 1-D linear optimum from the oracle identity x* = -1.
  const LinearFunction lin(vec({1.0}));
  const HopProblem problem(lin, 1.0, 2.0, vec({0.0}));
  CHECK(kkt_residual(problem, vec({-1.0})) <= 1e-8);
}

TEST_CASE("kkt_residual decreases along the solve") {
  NormalSampler rng(49);
  const QuadraticFunction q(random_psd(rng, 6), rng.normal_vector(6));
  const HopProblem problem(q, 1.0, 2.0, rng.normal_vector(6));
  const SolveReport report = solve_hop(problem, tight_config());
  REQUIRE(report.converged);
  CHECK(report.trace.back().kkt_residual <= 1e-6);
}

// ---------------------------------------------------------------------------
// check_contraction

TEST_CASE("contraction certificate above the dual solution") {
  NormalSampler rng(51);
  const QuadraticFunction q(random_psd(rng, 5), rng.normal_vector(5));
  const Vector c = rng.normal_vector(5);
  const OracleResult star = oracle_quadratic_hop(q, 1.0, 2.0, c, 1e-10);
  REQUIRE(star.lambda_star.norm() > 0.0);

  SolverConfig config = tight_config();
  config.lambda0_strategy = Lambda0Strategy::kGiven;
  config.lambda0 = 10.0 * star.lambda_star;
  const HopProblem problem(q, 1.0, 2.0, c);
  const SolveReport report = solve_hop(problem, config);

  const ContractionCertificate cert =
      check_contraction(report, star.lambda_star, 2.0);
  CHECK(cert.side == ContractionSide::kAbove);
  CHECK(cert.factor == doctest::Approx(0.5));
  CHECK(!cert.ratios.empty());
  for (const double r : cert.ratios) {
    CHECK(r >= -1e-8);
    CHECK(r <= 0.5 + 1e-8);
  }
  CHECK(cert.terminal_error <= cert.terminal_bound + 1e-8);
}

TEST_CASE("contraction certificate below the dual solution") {
  NormalSampler rng(52);
  const QuadraticFunction q(random_psd(rng, 5), rng.normal_vector(5));
  const Vector c = rng.normal_vector(5);
  const OracleResult star = oracle_quadratic_hop(q, 1.0, 3.0, c, 1e-10);
  REQUIRE(star.lambda_star.norm() > 0.0);

  SolverConfig config = tight_config();
  config.lambda0_strategy = Lambda0Strategy::kGiven;
  config.lambda0 = 0.1 * star.lambda_star;
  const HopProblem problem(q, 1.0, 3.0, c);
  const SolveReport report = solve_hop(problem, config);

  const ContractionCertificate cert =
      check_contraction(report, star.lambda_star, 3.0);
  CHECK(cert.side == ContractionSide::kBelow);
  for (const double r : cert.ratios) CHECK(r <= 2.0 / 3.0 + 1e-8);
}

TEST_CASE("contraction certificate at p=1 reflects one-step convergence") {
  NormalSampler rng(53);
  const QuadraticFunction q(random_psd(rng, 5), rng.normal_vector(5));
  const Vector c = rng.normal_vector(5);
  const OracleResult star = oracle_quadratic_hop(q, 1.0, 1.0, c, 1e-10);
  REQUIRE(star.lambda_star.norm() > 0.0);

  SolverConfig config = tight_config();
  config.lambda0_strategy = Lambda0Strategy::kGiven;
  config.lambda0 = 2.0 * star.lambda_star;
  const HopProblem problem(q, 1.0, 1.0, c);
  const SolveReport report = solve_hop(problem, config);

  const ContractionCertificate cert =
      check_contraction(report, star.lambda_star, 1.0);
  CHECK(cert.factor == 0.0);
  for (const double r : cert.ratios) CHECK(std::abs(r) <= 1e-8);
}

TEST_CASE("check_contraction rejects a non-contracting trace") {
  SolveReport fake;
  fake.trace.push_back({0, 2.0, 0, 0, 0, 0, 0});
  fake.trace.push_back({1, 2.5, 0, 0, 0, 0, 0});  // norm increased above
  fake.iterations = 1;
  fake.lambda_final = vec({2.5, 0.0});
  CHECK_THROWS_AS(check_contraction(fake, vec({1.0, 0.0}), 2.0),
                  VerificationError);
}

TEST_CASE("check_contraction flags a crossing of the limit norm") {
  SolveReport fake;
  fake.trace.push_back({0, 2.0, 0, 0, 0, 0, 0});
  fake.trace.push_back({1, 0.5, 0, 0, 0, 0, 0});  // jumped below ‖λ*‖ = 1
  fake.iterations = 1;
  fake.lambda_final = vec({0.5, 0.0});
  CHECK_THROWS_AS(check_contraction(fake, vec({1.0, 0.0}), 2.0),
                  VerificationError);
}

// ---------------------------------------------------------------------------
// run_hoppa

TEST_CASE("run_hoppa point indicator collapses to its point") {
  NormalSampler rng(54);
  const Vector b = rng.normal_vector(4);
  const PointIndicator f(b);
  const std::vector<Vector> traj =
      run_hoppa(f, 1.0, 2.0, rng.normal_vector(4), 3, tight_config());
  REQUIRE(traj.size() == 4);
  for (std::size_t k = 1; k < traj.size(); ++k)
    CHECK((traj[k] - b).norm() <= 1e-6);
}

TEST_CASE("run_hoppa quadratic objective descends toward the minimum") {
  NormalSampler rng(55);
  const Index n = 6;
  Matrix A = random_psd(rng, n);
  A += Matrix::Identity(n, n);  // positive definite: unique minimizer
  const Vector b = rng.normal_vector(n);
  const QuadraticFunction q(A, b);
  const Vector x_bar = q.matrix().ldlt().solve(-b);
  const double f_bar = q.value(x_bar);

  const std::vector<Vector> traj =
      run_hoppa(q, 1.0, 3.0, rng.normal_vector(n), 15, tight_config());
  double prev_gap = q.value(traj[0]) - f_bar;
  CHECK(prev_gap >= -1e-12);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double gap = q.value(traj[k]) - f_bar;
    CHECK(gap >= -1e-10);
    CHECK(gap <= prev_gap + 1e-10);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.1 * (q.value(traj[0]) - f_bar) + 1e-10);
}

TEST_CASE("run_hoppa l1 shrinks to the origin") {
  NormalSampler rng(56);
  const L1Norm f(5);
  const std::vector<Vector> traj =
      run_hoppa(f, 1.0, 2.0, rng.normal_vector(5), 20, tight_config());
  // Each outer step contracts toward the origin until the iterate sits at
  // the inner solver's precision floor (~tol^{3/4}); require monotone decrease
  // above that floor and that every later iterate stays under 1e-6.
  double prev = traj[0].norm();
  bool below_floor = false;
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double cur = traj[k].norm();
    if (!below_floor && prev > 1e-7) {
      CHECK(cur <= prev + 1e-12);
    } else {
      below_floor = true;
      CHECK(cur <= 1e-6);
    }
    prev = cur;
  }
  CHECK(traj.back().norm() <= 1e-6);
}
