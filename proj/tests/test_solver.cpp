#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rkhsd/solver.hpp"

using namespace rkhsd;

namespace {

PatchSamples random_patch(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 255.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  PatchSamples p{n, {}};
  for (int i = 0; i < n * n; ++i) p.values.push_back(u(rng));
  return p;
}

SolverParams params(double lambda, double mu, double mu1) {
  SolverParams p;
  p.lambda = lambda;
  p.mu = mu;
  p.mu1 = mu1;
  return p;
}

// Objective re-derived term by term from the expansion.
double naive_objective(const Eigen::VectorXd& c, const PatchSamples& patch, double sigma,
                       const EdgeBasis& basis, const SolverParams& p) {
  const auto g = oracle::grid(patch.n);
  std::vector<oracle::Ridge> ridges;
  for (const auto& r : basis.ridges()) ridges.push_back({r.a, r.b, r.c});
  const std::size_t na = g.size();
  const std::vector<double> alpha(c.data(), c.data() + na);
  const std::vector<double> beta(c.data() + na, c.data() + na + ridges.size());
  const double h[4] = {c(c.size() - 4), c(c.size() - 3), c(c.size() - 2), c(c.size() - 1)};
  double data = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    data += std::fabs(oracle::expansion(g, sigma, ridges, alpha, beta, h, g[i].x, g[i].y) -
                      patch.values[i]);
  }
  double beta_sq = 0.0;
  for (double b : beta) beta_sq += b * b;
  return data + 0.5 * p.lambda * oracle::kernel_quadratic(g, sigma, alpha) +
         0.5 * p.mu * beta_sq + 0.5 * p.mu1 * (h[1] * h[1] + h[2] * h[2] + h[3] * h[3]);
}

}  // namespace

TEST_CASE("objective: zero coefficients leave only the data term") {
  const PatchSystem sys(3, KernelParams(0.3), default_basis(1, 15.0));
  std::mt19937_64 rng(1);
  const PatchSamples patch = random_patch(rng, 3);
  double abs_sum = 0.0;
  for (double v : patch.values) abs_sum += std::fabs(v);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(sys.prototype.num_coeffs());
  CHECK(objective(zero, patch, sys.design, sys.gram, params(1, 2, 3)) == doctest::Approx(abs_sum));
}

TEST_CASE("objective: exact fit of a single sample") {
  const PatchSystem sys(1, KernelParams(0.3), EdgeBasis());
  const PatchSamples patch{1, {100.0}};
  Eigen::VectorXd c = Eigen::VectorXd::Zero(sys.prototype.num_coeffs());
  c(0) = 100.0;
  CHECK(objective(c, patch, sys.design, sys.gram, params(0, 0, 0)) == 0.0);
}

TEST_CASE("objective: h0 is not penalized, h1..h3 are") {
  const PatchSystem sys(3, KernelParams(0.3), EdgeBasis());
  const PatchSamples patch{3, std::vector<double>(9, 0.0)};
  Eigen::VectorXd c = Eigen::VectorXd::Zero(sys.prototype.num_coeffs());
  c(9) = 10.0;  // h0
  CHECK(objective(c, patch, sys.design, sys.gram, params(0, 0, 7)) == doctest::Approx(90.0));
  c(9) = 0.0;
  c(10) = 2.0;  // h1
  const double data = objective(c, patch, sys.design, sys.gram, params(0, 0, 0));
  CHECK(objective(c, patch, sys.design, sys.gram, params(0, 0, 7)) ==
        doctest::Approx(data + 0.5 * 7 * 4));
}

TEST_CASE("objective: matches naive term-by-term summation") {
  std::mt19937_64 rng(12);
  const EdgeBasis basis = default_basis(1, 15.0);
  const PatchSystem sys(3, KernelParams(0.3), basis);
  for (int trial = 0; trial < 50; ++trial) {
    const PatchSamples patch = random_patch(rng, 3);
    const Eigen::VectorXd c = oracle::random_vector(rng, sys.prototype.num_coeffs(), 60.0);
    const SolverParams p = params(0.7, 1.3, 2.1);
    const double expected = naive_objective(c, patch, 0.3, basis, p);
    // erf approximation error, 1.5e-7 per ridge term, bounds the disagreement.
    CHECK(std::fabs(objective(c, patch, sys.design, sys.gram, p) - expected) <= 9 * 4 * 60 * 1.5e-7);
  }
}

TEST_CASE("objective and subgradient reject inconsistent dimensions") {
  const PatchSystem sys(3, KernelParams(0.3), EdgeBasis());
  const PatchSamples patch{3, std::vector<double>(9, 1.0)};
  const Eigen::VectorXd bad = Eigen::VectorXd::Zero(5);
  CHECK_THROWS_AS(objective(bad, patch, sys.design, sys.gram, {}), std::invalid_argument);
  CHECK_THROWS_AS(subgradient(bad, patch, sys.design, sys.gram, {}), std::invalid_argument);
  const PatchSamples small{1, {1.0}};
  const Eigen::VectorXd ok = Eigen::VectorXd::Zero(sys.prototype.num_coeffs());
  CHECK_THROWS_AS(objective(ok, small, sys.design, sys.gram, {}), std::invalid_argument);
}

TEST_CASE("subgradient: zero at an exact fit with no penalty pull") {
  const PatchSystem sys(3, KernelParams(0.3), default_basis(1, 15.0));
  const PatchSamples patch{3, std::vector<double>(9, 42.0)};
  Eigen::VectorXd c = Eigen::VectorXd::Zero(sys.prototype.num_coeffs());
  c(c.size() - 4) = 42.0;
  CHECK(subgradient(c, patch, sys.design, sys.gram, params(1, 1, 1)).isZero(0.0));
}

TEST_CASE("subgradient: one positive residual selects a design row") {
  const PatchSystem sys(3, KernelParams(0.3), default_basis(1, 15.0));
  PatchSamples patch{3, std::vector<double>(9, 42.0)};
  patch.values[5] = 37.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(sys.prototype.num_coeffs());
  c(c.size() - 4) = 42.0;
  const Eigen::VectorXd g = subgradient(c, patch, sys.design, sys.gram, params(0, 0, 0));
  CHECK(g == Eigen::VectorXd(sys.design.row(5).transpose()));
}

TEST_CASE("subgradient agrees with central finite differences at smooth points") {
  std::mt19937_64 rng(77);
  const EdgeBasis basis = default_basis(1, 15.0);
  const PatchSystem sys(3, KernelParams(0.35), basis);
  const double eps = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const PatchSamples patch = random_patch(rng, 3);
    const Eigen::VectorXd c = oracle::random_vector(rng, sys.prototype.num_coeffs(), 40.0);
    Eigen::VectorXd d = oracle::random_vector(rng, c.size(), 1.0);
    d.normalize();
    const SolverParams p = params(0.5, 2.0, 1.0);
    const Eigen::VectorXd residual = sys.design * c - Eigen::Map<const Eigen::VectorXd>(patch.values.data(), 9);
    if ((residual.cwiseAbs().array() < 1e-3).any()) continue;  // too close to a kink
    const double fd = (objective(c + eps * d, patch, sys.design, sys.gram, p) -
                       objective(c - eps * d, patch, sys.design, sys.gram, p)) /
                      (2 * eps);
    const double directional = subgradient(c, patch, sys.design, sys.gram, p).dot(d);
    REQUIRE(std::fabs(fd - directional) <= 1e-4);
  }
}

TEST_CASE("subgradient inequality and convexity on random pairs") {
  std::mt19937_64 rng(2024);
  const PatchSystem sys(5, KernelParams(0.35), default_basis(3, 15.0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const PatchSamples patch = random_patch(rng, 5);
    const SolverParams p = params(2 * unit(rng), 10 * unit(rng), 10 * unit(rng));
    const Eigen::VectorXd c = oracle::random_vector(rng, sys.prototype.num_coeffs(), 50.0);
    const Eigen::VectorXd d = oracle::random_vector(rng, sys.prototype.num_coeffs(), 50.0);
    const double fc = objective(c, patch, sys.design, sys.gram, p);
    const double fd = objective(d, patch, sys.design, sys.gram, p);
    const Eigen::VectorXd g = subgradient(c, patch, sys.design, sys.gram, p);
    REQUIRE(fd >= fc + g.dot(d - c) - 1e-9);
    const double theta = unit(rng);
    const double fmix = objective(theta * c + (1 - theta) * d, patch, sys.design, sys.gram, p);
    REQUIRE(fmix <= theta * fc + (1 - theta) * fd + 1e-9);
  }
}

TEST_CASE("default_init starts at the median") {
  const PatchSamples patch{3, {5, 1, 9, 7, 3, 200, 0, 8, 6}};
  const Eigen::VectorXd c = default_init(patch, 13);
  CHECK(c(9) == 6.0);
  CHECK(c.head(9).isZero(0.0));
  CHECK(c.tail(3).isZero(0.0));
}

TEST_CASE("solve_patch: constant patch is reproduced") {
  const EdgeBasis basis = default_basis(3, 15.0);
  const PatchSystem sys(5, KernelParams(0.35), basis);
  const PatchSamples patch{5, std::vector<double>(25, 77.0)};
  const SolveResult r = solve_patch(patch, sys, params(0.5, 10, 5));
  CHECK(r.objective == 0.0);
  for (const auto& pt : r.model.grid()) CHECK(std::fabs(model_eval(r.model, pt.x, pt.y) - 77.0) <= 1e-2);
}

TEST_CASE("solve_patch: never worse than the initial point") {
  std::mt19937_64 rng(31);
  const EdgeBasis basis = default_basis(1, 15.0);
  const PatchSystem sys(3, KernelParams(0.35), basis);

  // Exact minimizer of a constant problem: objective 0 is returned unchanged.
  const PatchSamples flat{3, std::vector<double>(9, 12.0)};
  Eigen::VectorXd exact = Eigen::VectorXd::Zero(sys.prototype.num_coeffs());
  exact(exact.size() - 4) = 12.0;
  const SolveResult r0 = solve_patch(flat, sys, params(1, 1, 1), exact);
  CHECK(r0.objective == 0.0);
  CHECK(r0.model.coeffs() == exact);

  for (int trial = 0; trial < 20; ++trial) {
    const PatchSamples patch = random_patch(rng, 3);
    const Eigen::VectorXd init = oracle::random_vector(rng, sys.prototype.num_coeffs(), 80.0);
    const SolverParams p = params(0.5, 1.0, 1.0);
    const SolveResult r = solve_patch(patch, sys, p, init);
    CHECK(r.objective <= objective(init, patch, sys.design, sys.gram, p));
    CHECK(r.objective == objective(r.model.coeffs(), patch, sys.design, sys.gram, p));
  }
}

TEST_CASE("solve_patch: best objective is monotone and iterates stay in the ball") {
  std::mt19937_64 rng(404);
  const PatchSystem sys(5, KernelParams(0.35), default_basis(3, 15.0));
  for (int trial = 0; trial < 100; ++trial) {
    const PatchSamples patch = random_patch(rng, 5);
    SolverParams p = params(0.5, 0.05, 0.05);
    p.radius = trial % 2 == 0 ? 150.0 : SolverParams::default_radius(5);  // binding and loose
    double last_best = std::numeric_limits<double>::infinity();
    bool ok = true;
    solve_patch(patch, sys, p, std::nullopt, [&](int, const Eigen::VectorXd& c, double best) {
      ok = ok && best <= last_best && c.norm() <= p.radius + 1e-12;
      last_best = best;
    });
    REQUIRE(ok);
  }
}

TEST_CASE("solve_patch: deterministic") {
  std::mt19937_64 rng(9);
  const PatchSystem sys(5, KernelParams(0.35), default_basis(3, 15.0));
  const PatchSamples patch = random_patch(rng, 5);
  const SolveResult a = solve_patch(patch, sys, params(0.5, 0.05, 0.05));
  const SolveResult b = solve_patch(patch, sys, params(0.5, 0.05, 0.05));
  CHECK(a.model.coeffs() == b.model.coeffs());
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);

  const SolveResult c = solve_patch(patch, default_basis(3, 15.0), KernelParams(0.35),
                                    params(0.5, 0.05, 0.05));
  CHECK(c.model.coeffs() == a.model.coeffs());
}

TEST_CASE("solve_patch: tiny unpenalized instance against lattice search") {
  std::mt19937_64 rng(55);
  const PatchSystem sys(3, KernelParams(0.35), EdgeBasis());
  const SolverParams p = params(0, 0, 0);
  for (int trial = 0; trial < 3; ++trial) {
    const PatchSamples patch = random_patch(rng, 3, 60.0, 200.0);
    const Eigen::VectorXd center = default_init(patch, 13);
    const double lattice = oracle::l1_lattice_minimum(3, 0.35, patch.values, center, 20.0);
    const SolveResult r = solve_patch(patch, sys, p);
    MESSAGE("lattice " << lattice << " solver " << r.objective);
    CHECK(r.objective <= 1.05 * lattice);
  }
}

TEST_CASE("solver rejects invalid input") {
  const PatchSystem sys(3, KernelParams(0.35), EdgeBasis());
  SolverParams p;
  p.max_iters = 0;
  CHECK_THROWS_AS(solve_patch(PatchSamples{3, std::vector<double>(9, 1.0)}, sys, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_patch(PatchSamples{4, std::vector<double>(16, 1.0)}, sys, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_patch(PatchSamples{3, std::vector<double>(8, 1.0)}, sys, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_patch(PatchSamples{5, std::vector<double>(25, 1.0)}, sys, {}),
                  std::invalid_argument);
}
