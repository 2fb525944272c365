#include "rkhsd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rkhsd {
namespace {

constexpr int kStallWindow = 50;

void check_dims(const Eigen::VectorXd& coeffs, const PatchSamples& patch,
                const Eigen::MatrixXd& design, const GramMatrix& gram) {
  const auto rows = static_cast<Eigen::Index>(patch.values.size());
  if (design.rows() != rows || gram.order() != rows ||
      design.cols() < rows + kPolyTerms || coeffs.size() != design.cols()) {
    throw std::invalid_argument(
        "solver: inconsistent dimensions (samples " + std::to_string(rows) + ", design " +
        std::to_string(design.rows()) + "x" + std::to_string(design.cols()) + ", gram " +
        std::to_string(gram.order()) + ", coeffs " + std::to_string(coeffs.size()) + ")");
  }
}

Eigen::Map<const Eigen::VectorXd> samples_of(const PatchSamples& patch) {
  return {patch.values.data(), static_cast<Eigen::Index>(patch.values.size())};
}

struct Blocks {
  Eigen::Index n_alpha;
  Eigen::Index n_beta;
};

Blocks blocks_of(const Eigen::MatrixXd& design) {
  const Eigen::Index n_alpha = design.rows();
  return {n_alpha, design.cols() - n_alpha - kPolyTerms};
}

double penalty(const Eigen::VectorXd& c, const GramMatrix& gram, Blocks b,
               const SolverParams& p) {
  const auto alpha = c.head(b.n_alpha);
  const auto beta = c.segment(b.n_alpha, b.n_beta);
  const auto h_tail = c.tail(kPolyTerms - 1);
  return 0.5 * p.lambda * alpha.dot(gram.entries() * alpha) + 0.5 * p.mu * beta.squaredNorm() +
         0.5 * p.mu1 * h_tail.squaredNorm();
}

// Objective and subgradient sharing one residual evaluation.
double evaluate(const Eigen::VectorXd& c, const Eigen::VectorXd& samples,
                const Eigen::MatrixXd& design, const GramMatrix& gram, const SolverParams& p,
                Eigen::VectorXd* grad) {
  const Blocks b = blocks_of(design);
  const Eigen::VectorXd residual = design * c - samples;
  const double value = residual.cwiseAbs().sum() + penalty(c, gram, b, p);
  if (grad != nullptr) {
    const Eigen::VectorXd signs = residual.unaryExpr(
        [](double r) { return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0); });
    *grad = design.transpose() * signs;
    grad->head(b.n_alpha) += p.lambda * (gram.entries() * c.head(b.n_alpha));
    grad->segment(b.n_alpha, b.n_beta) += p.mu * c.segment(b.n_alpha, b.n_beta);
    grad->tail(kPolyTerms - 1) += p.mu1 * c.tail(kPolyTerms - 1);
  }
  return value;
}

}  // namespace

void SolverParams::validate() const {
  auto nonneg = [](double v) { return v >= 0.0 && std::isfinite(v); };
  if (!nonneg(lambda) || !nonneg(mu) || !nonneg(mu1)) {
    throw std::invalid_argument("solver: lambda, mu, mu1 must be finite and >= 0");
  }
  if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
  if (!(step_c > 0.0) || !std::isfinite(step_c)) {
    throw std::invalid_argument("solver: step_c must be positive");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("solver: radius must be positive");
  if (!nonneg(tol)) throw std::invalid_argument("solver: tol must be >= 0");
}

void PatchSamples::validate() const {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("patch size must be odd and positive, got " + std::to_string(n));
  }
  if (values.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("patch of size " + std::to_string(n) + " needs " +
                                std::to_string(n * n) + " samples, got " +
                                std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("patch samples must be finite");
  }
}

PatchSystem::PatchSystem(int n, const KernelParams& kernel, const EdgeBasis& basis)
    : prototype(n, kernel, basis),
      gram(prototype.grid(), kernel),
      design(design_matrix(prototype)) {}

double objective(const Eigen::VectorXd& coeffs, const PatchSamples& patch,
                 const Eigen::MatrixXd& design, const GramMatrix& gram, const SolverParams& p) {
  check_dims(coeffs, patch, design, gram);
  return evaluate(coeffs, samples_of(patch), design, gram, p, nullptr);
}

Eigen::VectorXd subgradient(const Eigen::VectorXd& coeffs, const PatchSamples& patch,
                            const Eigen::MatrixXd& design, const GramMatrix& gram,
                            const SolverParams& p) {
  check_dims(coeffs, patch, design, gram);
  Eigen::VectorXd g;
  evaluate(coeffs, samples_of(patch), design, gram, p, &g);
  return g;
}

Eigen::VectorXd default_init(const PatchSamples& patch, Eigen::Index num_coeffs) {
  if (patch.values.empty() || num_coeffs < kPolyTerms) {
    throw std::invalid_argument("default_init: empty patch or too few coefficients");
  }
  std::vector<double> v = patch.values;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double median = v[mid];
  if (v.size() % 2 == 0) {
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(num_coeffs);
  c(num_coeffs - kPolyTerms) = median;
  return c;
}

SolveResult solve_patch(const PatchSamples& patch, const PatchSystem& system,
                        const SolverParams& p, const std::optional<Eigen::VectorXd>& init,
                        const SolveObserver& observer) {
  patch.validate();
  p.validate();
  if (patch.n != system.prototype.n()) {
    throw std::invalid_argument("solve_patch: patch size does not match the patch system");
  }
  const Eigen::Index dim = system.prototype.num_coeffs();
  Eigen::VectorXd c = init ? *init : default_init(patch, dim);
  check_dims(c, patch, system.design, system.gram);

  const Eigen::VectorXd samples = samples_of(patch);
  Eigen::VectorXd g(dim);
  double current = evaluate(c, samples, system.design, system.gram, p, &g);
  Eigen::VectorXd best = c;
  double best_obj = current;

  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(p.max_iters));
  int t = 0;
  for (; t < p.max_iters; ++t) {
    const double g_norm = g.norm();
    if (g_norm == 0.0) break;  // zero subgradient: current point is optimal

    c -= (p.step_c / std::sqrt(t + 1.0) / g_norm) * g;
    const double c_norm = c.norm();
    if (c_norm > p.radius) c *= p.radius / c_norm;

    current = evaluate(c, samples, system.design, system.gram, p, &g);
    if (current < best_obj) {
      best_obj = current;
      best = c;
    }
    if (observer) observer(t, c, best_obj);

    history.push_back(best_obj);
    if (t >= kStallWindow) {
      const double past = history[static_cast<std::size_t>(t - kStallWindow)];
      if (past - best_obj <= p.tol * std::fabs(past)) {
        ++t;
        break;
      }
    }
  }

  SolveResult result{system.prototype, best_obj, t};
  result.model.set_coeffs(best);
  return result;
}

SolveResult solve_patch(const PatchSamples& patch, const EdgeBasis& basis,
                        const KernelParams& kernel, const SolverParams& p,
                        const std::optional<Eigen::VectorXd>& init) {
  patch.validate();
  const PatchSystem system(patch.n, kernel, basis);
  return solve_patch(patch, system, p, init);
}

}  // namespace rkhsd
