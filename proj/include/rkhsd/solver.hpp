#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rkhsd/model.hpp"
#include "rkhsd/numerics.hpp"

namespace rkhsd {

struct SolverParams {
  double lambda = 0.5;  // RKHS norm weight
  double mu = 1.0;      // ridge coefficient weight
  double mu1 = 1.0;     // h1..h3 weight; h0 is never penalized
  int max_iters = 300;
  double step_c = 25.0;
  double radius = 10.0 * 5 * 255;  // projection ball, see default_radius()
  double tol = 1e-4;

  /// 10 * n * 255, the ball radius used when none is configured.
  static double default_radius(int n) { return 10.0 * n * 255.0; }

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Noisy intensities of an n x n window, row-major.
struct PatchSamples {
  int n = 1;
  std::vector<double> values;

  /// Throws std::invalid_argument unless n is odd and values has n * n finite entries.
  void validate() const;
};

/// Everything about a patch solve that does not depend on the samples.
///
/// Built once per (n, basis, kernel) and shared read-only across solves.
struct PatchSystem {
  PatchSystem(int n, const KernelParams& kernel, const EdgeBasis& basis);

  SemiParametricModel prototype;  // zero coefficients, carries the geometry
  GramMatrix gram;
  Eigen::MatrixXd design;
};

/// Sum of |residuals| + lambda/2 a^T G a + mu/2 |beta|^2 + mu1/2 (h1^2 + h2^2 + h3^2).
/// The ridge count is inferred from the design's column count.
double objective(const Eigen::VectorXd& coeffs, const PatchSamples& patch,
                 const Eigen::MatrixXd& design, const GramMatrix& gram, const SolverParams& p);

/// D^T sign(residual) + penalty gradient, with sign(0) = 0.
Eigen::VectorXd subgradient(const Eigen::VectorXd& coeffs, const PatchSamples& patch,
                            const Eigen::MatrixXd& design, const GramMatrix& gram,
                            const SolverParams& p);

/// alpha = 0, beta = 0, h0 = median of the samples, h1..h3 = 0.
Eigen::VectorXd default_init(const PatchSamples& patch, Eigen::Index num_coeffs);

struct SolveResult {
  SemiParametricModel model;
  double objective = 0.0;
  int iterations = 0;
};

/// Called after every iteration with (t, current iterate, best objective so far).
using SolveObserver = std::function<void(int, const Eigen::VectorXd&, double)>;

/// Projected subgradient descent from `init` (or default_init).
///
/// Step t moves by step_c / sqrt(t + 1) along the normalized negative
/// subgradient, then projects onto the ball |c| <= radius. The best iterate is
/// returned. Stops early on a zero subgradient or when the best objective
/// improved by less than tol (relative) over the last 50 iterations.
SolveResult solve_patch(const PatchSamples& patch, const PatchSystem& system,
                        const SolverParams& p,
                        const std::optional<Eigen::VectorXd>& init = std::nullopt,
                        const SolveObserver& observer = {});

/// Convenience overload that builds the PatchSystem for a single solve.
SolveResult solve_patch(const PatchSamples& patch, const EdgeBasis& basis,
                        const KernelParams& kernel, const SolverParams& p,
                        const std::optional<Eigen::VectorXd>& init = std::nullopt);

}  // namespace rkhsd
