// hopx — command line front end: instance generation, solver execution with
// CSV traces, and property-check suites.
//
// Exit codes: 0 success, 1 usage/parse error, 2 iteration cap reached,
// 3 property violation.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hopx/bisection.hpp"
#include "hopx/core.hpp"
#include "hopx/functions.hpp"
#include "hopx/instance_io.hpp"
#include "hopx/oracle.hpp"
#include "hopx/rng.hpp"
#include "hopx/solver.hpp"

namespace {

using namespace hopx;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIterationCap = 2;
constexpr int kExitViolation = 3;

int thread_cap() {
  if (const char* env = std::getenv("HOPX_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--p", "invalid value '" + token + "'");
    }
  }
  if (values.empty()) throw CLI::ValidationError("--p", "empty list");
  return values;
}

std::string trace_path_for(const std::string& base, double p, bool sweep) {
  if (!sweep) return base;
  const std::filesystem::path path(base);
  std::ostringstream name;
  name << path.stem().string() << ".p" << p << path.extension().string();
  return (path.parent_path() / name.str()).string();
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const std::string& kind, Index n, Index m, std::uint64_t seed,
            double p, double sigma, const std::string& out_path) {
  NormalSampler rng(seed);
  InstanceFile inst;
  inst.kind = kind;
  inst.p = p;
  inst.sigma = sigma;
  inst.n = n;
  inst.seed = static_cast<std::int64_t>(seed);

  // Draw order is part of the reproducibility contract:
  // quadratic: a_rows (row by row), b_shift, c; linear: a, c; point: b, c;
  // l1: c.
  if (kind == "quadratic") {
    const Matrix a_rows = rng.normal_matrix(m, n);
    const Vector b_shift = rng.normal_vector(m);
    inst.c = rng.normal_vector(n);
    const QuadraticFunction q = logsumexp_instance(a_rows, b_shift, inst.c);
    inst.A = q.matrix();
    inst.b = q.linear();
  } else if (kind == "l1") {
    inst.c = rng.normal_vector(n);
  } else if (kind == "linear") {
    inst.a = rng.normal_vector(n);
    inst.c = rng.normal_vector(n);
  } else {  // point
    inst.b = rng.normal_vector(n);
    inst.c = rng.normal_vector(n);
  }

  save_instance(inst, out_path);
  std::cout << "wrote " << out_path << " kind=" << kind << " n=" << n;
  if (kind == "quadratic") std::cout << " m=" << m;
  std::cout << " p=" << p << " sigma=" << sigma << " seed=" << seed << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solve

struct RunOutcome {
  double p = 0.0;
  SolveReport report;
  std::string error;
};

int cmd_solve(const std::string& instance_path, const std::string& method,
              double tol, int max_iters, const std::string& lambda0,
              const std::string& trace_path, std::vector<double> p_values,
              double sigma_override) {
  const InstanceFile inst = load_instance(instance_path);
  const std::unique_ptr<ProxFunction> f = make_function(inst);
  const double sigma = sigma_override > 0.0 ? sigma_override : inst.sigma;
  if (p_values.empty()) p_values.push_back(inst.p);

  if (method == "bisect") {
    for (const double p : p_values)
      if (p != 2.0) {
        std::cerr << "error: --method bisect requires p = 2 (got p = " << p
                  << ")\n";
        return kExitUsage;
      }
  }

  SolverConfig config;
  config.tol = tol;
  config.max_iters = max_iters;
  if (lambda0 == "auto") {
    config.lambda0_strategy = Lambda0Strategy::kAuto;
  } else if (lambda0 == "zero") {
    config.lambda0_strategy = Lambda0Strategy::kZero;
  } else if (lambda0.rfind("file:", 0) == 0) {
    config.lambda0_strategy = Lambda0Strategy::kGiven;
    config.lambda0 = load_vector(lambda0.substr(5));
  } else {
    std::cerr << "error: --lambda0 must be auto, zero, or file:<path>\n";
    return kExitUsage;
  }

  const bool sweep = p_values.size() > 1;
  std::vector<RunOutcome> outcomes(p_values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= p_values.size()) return;
      RunOutcome& out = outcomes[i];
      out.p = p_values[i];
      try {
        if (method == "bisect") {
          BisectionConfig bconfig;
          bconfig.tol_t = tol;
          bconfig.max_iters = max_iters;
          out.report = solve_bisection_p2(*f, inst.c, sigma, bconfig);
        } else {
          HopProblem problem(*f, sigma, out.p, inst.c);
          out.report = solve_hop(problem, config);
        }
        if (!trace_path.empty())
          save_trace_csv(out.report, trace_path_for(trace_path, out.p, sweep));
      } catch (const std::exception& err) {
        out.error = err.what();
      }
    }
  };

  const int workers =
      std::min<int>(thread_cap(), static_cast<int>(p_values.size()));
  if (workers > 1) {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  } else {
    worker();
  }

  int exit_code = kExitOk;
  for (const RunOutcome& out : outcomes) {
    if (!out.error.empty()) {
      std::cerr << "error: p=" << out.p << ": " << out.error << "\n";
      return kExitUsage;
    }
    const TraceRecord& last = out.report.trace.back();
    std::cout << "p=" << out.p << " method=" << method
              << " iterations=" << out.report.iterations
              << " converged=" << (out.report.converged ? "true" : "false")
              << " objective=" << format_double(last.objective)
              << " kkt_residual=" << format_double(last.kkt_residual) << "\n";
    if (!out.report.converged) exit_code = kExitIterationCap;
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// check

struct CheckContext {
  std::uint64_t seed = 7;
  Index n = 20;
  int failures = 0;
  std::string property;

  void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "ok " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

// A random well-conditioned PSD quadratic fixture.
InstanceFile random_quadratic(NormalSampler& rng, Index n, double p,
                              double sigma) {
  const Matrix G = rng.normal_matrix(n, n);
  InstanceFile inst;
  inst.kind = "quadratic";
  inst.p = p;
  inst.sigma = sigma;
  inst.n = n;
  Matrix A = G.transpose() * G / static_cast<double>(n);
  A = 0.5 * (A + A.transpose()).eval();
  inst.A = A;
  inst.b = rng.normal_vector(n);
  inst.c = rng.normal_vector(n);
  return inst;
}

void save_counterexample(const InstanceFile& inst, const std::string& prop) {
  const std::string path = "hopx-counterexample-" + prop + ".txt";
  save_instance(inst, path);
  std::cerr << "counterexample written to " << path << "\n";
}

int check_contraction_suite(CheckContext& ctx) {
  NormalSampler rng(ctx.seed);
  for (const double p : {2.0, 3.0, 4.0}) {
    for (const double scale : {10.0, 0.1}) {
      InstanceFile inst = random_quadratic(rng, ctx.n, p, 1.0);
      const QuadraticFunction q(inst.A, inst.b);
      const OracleResult star = oracle_quadratic_hop(q, 1.0, p, inst.c, 1e-10);
      SolverConfig config;
      config.tol = 1e-14;
      config.max_iters = 400;
      config.lambda0_strategy = Lambda0Strategy::kGiven;
      config.lambda0 = scale * star.lambda_star;
      const HopProblem problem(q, 1.0, p, inst.c);
      const SolveReport report = solve_hop(problem, config);
      std::ostringstream name;
      name << "contraction p=" << p << " scale=" << scale;
      try {
        const ContractionCertificate cert =
            check_contraction(report, star.lambda_star, p);
        std::ostringstream detail;
        detail << "ratios=" << cert.ratios.size()
               << " factor=" << cert.factor
               << " terminal_error=" << cert.terminal_error;
        ctx.report(true, name.str(), detail.str());
      } catch (const VerificationError& err) {
        ctx.report(false, name.str(), err.what());
        save_counterexample(inst, ctx.property);
      }
    }
  }
  return ctx.failures ? kExitViolation : kExitOk;
}

int check_lemma51_suite(CheckContext& ctx) {
  NormalSampler rng(ctx.seed);
  const Index n = std::min<Index>(ctx.n, 10);
  for (int rep = 0; rep < 10; ++rep) {
    InstanceFile inst = random_quadratic(rng, n, 2.0, 1.0);
    const std::unique_ptr<ProxFunction> f = make_function(inst);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 100; ++i) {
      double t1 = std::exp(rng.normal());
      double t2 = std::exp(rng.normal());
      if (t2 < t1) std::swap(t1, t2);
      pairs.emplace_back(t1, t2);
    }
    std::string diagnostic;
    const bool ok = check_T_sandwich(*f, inst.c, pairs, &diagnostic);
    ctx.report(ok, "lemma51 quadratic rep=" + std::to_string(rep), diagnostic);
    if (!ok) save_counterexample(inst, ctx.property);
  }
  return ctx.failures ? kExitViolation : kExitOk;
}

int check_duality_suite(CheckContext& ctx) {
  NormalSampler rng(ctx.seed);
  const Index n = std::min<Index>(ctx.n, 10);

  // Random primal/dual pairs must never produce a negative gap.
  InstanceFile inst = random_quadratic(rng, n, 2.0, 1.0);
  const QuadraticFunction q(inst.A, inst.b);
  const HopProblem problem(q, inst.sigma, inst.p, inst.c);
  double min_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vector x = rng.normal_vector(n);
    const Vector lam = rng.normal_vector(n);
    min_gap = std::min(min_gap, weak_duality_gap(problem, x, lam));
  }
  ctx.report(min_gap >= -1e-10, "duality nonnegative-gap",
             "min_gap=" + format_double(min_gap));
  if (min_gap < -1e-10) save_counterexample(inst, ctx.property);

  // The gap closes at the oracle optimum.
  const OracleResult star =
      oracle_quadratic_hop(q, inst.sigma, inst.p, inst.c, 1e-10);
  const double gap = weak_duality_gap(problem, star.x_star, star.lambda_star);
  ctx.report(std::abs(gap) <= 1e-6, "duality optimal-gap",
             "gap=" + format_double(gap));
  if (std::abs(gap) > 1e-6) save_counterexample(inst, ctx.property);

  // Point indicator has a closed-form conjugate: exact zero gap at (b, 0).
  const Vector b = rng.normal_vector(n);
  const PointIndicator point(b);
  const HopProblem point_problem(point, 1.0, 2.0, b);
  const double point_gap = weak_duality_gap(point_problem, b, Vector::Zero(n));
  ctx.report(point_gap == 0.0, "duality point-indicator",
             "gap=" + format_double(point_gap));
  return ctx.failures ? kExitViolation : kExitOk;
}

int check_oracle_agreement_suite(CheckContext& ctx) {
  NormalSampler rng(ctx.seed);
  const Index n = std::min<Index>(ctx.n, 10);
  for (int rep = 0; rep < 20; ++rep) {
    const double p = (rep % 2 == 0) ? 2.0 : 3.0;
    InstanceFile inst = random_quadratic(rng, n, p, 1.0);
    const QuadraticFunction q(inst.A, inst.b);
    const HopProblem problem(q, inst.sigma, p, inst.c);
    const OracleResult a = oracle_quadratic_hop(q, 1.0, p, inst.c, 1e-10);
    const OracleResult b =
        oracle_prox_gradient(problem, Vector::Zero(n), 100000, 1.0);
    const double diff = (a.x_star - b.x_star).norm();
    ctx.report(diff <= 1e-6, "oracle-agreement rep=" + std::to_string(rep),
               "diff=" + format_double(diff));
    if (diff > 1e-6) save_counterexample(inst, ctx.property);
  }
  return ctx.failures ? kExitViolation : kExitOk;
}

int cmd_check(const std::string& property, std::uint64_t seed, Index n) {
  CheckContext ctx;
  ctx.seed = seed;
  ctx.n = n;
  ctx.property = property;
  if (property == "contraction") return check_contraction_suite(ctx);
  if (property == "lemma51") return check_lemma51_suite(ctx);
  if (property == "duality") return check_duality_suite(ctx);
  return check_oracle_agreement_suite(ctx);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for the pth-order proximal operator"};
  app.require_subcommand(1);

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  std::string gen_kind;
  Index gen_n = 0;
  Index gen_m = 0;
  std::uint64_t gen_seed = 0;
  double gen_p = 2.0;
  double gen_sigma = 1.0;
  std::string gen_out = "hopx-instance.txt";
  gen->add_option("kind", gen_kind, "instance kind")
      ->required()
      ->check(CLI::IsMember({"quadratic", "l1", "linear", "point"}));
  gen->add_option("--n", gen_n, "dimension")->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m,
                  "log-sum-exp term count (quadratic; default 2n)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "PRNG seed (default 0)");
  gen->add_option("--p", gen_p, "power order")->check(CLI::Range(1.0, 1e6));
  gen->add_option("--sigma", gen_sigma, "regularization weight")
      ->check(CLI::PositiveNumber);
  gen->add_option("--instance", gen_out, "output path");

  // solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "run a solver on an instance");
  std::string solve_instance;
  std::string solve_method = "fixedpoint";
  double solve_tol = 1e-10;
  int solve_max_iters = 500;
  std::string solve_lambda0 = "auto";
  std::string solve_trace;
  std::string solve_p_list;
  double solve_sigma = 0.0;
  solve->add_option("--instance", solve_instance, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--method", solve_method, "fixedpoint or bisect")
      ->check(CLI::IsMember({"fixedpoint", "bisect"}));
  solve->add_option("--tol", solve_tol, "stopping tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", solve_max_iters, "iteration cap")
      ->check(CLI::PositiveNumber);
  solve->add_option("--lambda0", solve_lambda0,
                    "initial dual point: auto|zero|file:<path>");
  solve->add_option("--trace", solve_trace, "trace CSV output path");
  solve->add_option("--p", solve_p_list,
                    "power order override; comma list runs a sweep");
  solve->add_option("--sigma", solve_sigma, "sigma override")
      ->check(CLI::PositiveNumber);

  // check --------------------------------------------------------------
  auto* check = app.add_subcommand("check", "run a property suite");
  std::string check_property;
  std::uint64_t check_seed = 7;
  Index check_n = 20;
  check
      ->add_option("property", check_property,
                   "contraction|lemma51|duality|oracle-agreement")
      ->required()
      ->check(CLI::IsMember(
          {"contraction", "lemma51", "duality", "oracle-agreement"}));
  check->add_option("--seed", check_seed, "PRNG seed");
  check->add_option("--n", check_n, "fixture dimension")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    // --help and friends exit 0; every real usage problem exits 1.
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (gen_m == 0) gen_m = 2 * gen_n;
      return cmd_gen(gen_kind, gen_n, gen_m, gen_seed, gen_p, gen_sigma,
                     gen_out);
    }
    if (solve->parsed()) {
      std::vector<double> p_values;
      if (!solve_p_list.empty()) p_values = parse_p_list(solve_p_list);
      return cmd_solve(solve_instance, solve_method, solve_tol,
                       solve_max_iters, solve_lambda0, solve_trace, p_values,
                       solve_sigma);
    }
    return cmd_check(check_property, check_seed, check_n);
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
}
