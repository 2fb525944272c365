#include "rkhsd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rkhsd {

KernelParams::KernelParams(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("kernel sigma must be positive and finite, got " +
                                std::to_string(sigma));
  }
}

double erf(double x) {
  if (x == 0.0) return 0.0;
  constexpr double p = 0.3275911;
  constexpr double a1 = 0.254829592;
  constexpr double a2 = -0.284496736;
  constexpr double a3 = 1.421413741;
  constexpr double a4 = -1.453152027;
  constexpr double a5 = 1.061405429;
  // Largest double below one; keeps the saturated tail inside (-1, 1).
  constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;

  const double ax = std::fabs(x);
  const double t = 1.0 / (1.0 + p * ax);
  const double poly = t * (a1 + t * (a2 + t * (a3 + t * (a4 + t * a5))));
  const double y = std::min(1.0 - poly * std::exp(-ax * ax), kBelowOne);
  return x < 0.0 ? -y : y;
}

double gaussian_kernel(const Point2& p, const Point2& q, const KernelParams& params) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double s = params.sigma();
  return std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
}

GramMatrix::GramMatrix(std::span<const Point2> grid, const KernelParams& params) {
  if (grid.empty()) throw std::invalid_argument("Gram matrix needs a nonempty grid");
  const auto n = static_cast<Eigen::Index>(grid.size());
  entries_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    entries_(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double k = gaussian_kernel(grid[i], grid[j], params);
      entries_(i, j) = k;
      entries_(j, i) = k;
    }
  }
}

GramMatrix build_gram(std::span<const Point2> grid, const KernelParams& params) {
  return GramMatrix(grid, params);
}

double quad_form(const GramMatrix& gram, const Eigen::VectorXd& a) {
  if (a.size() != gram.order()) {
    throw std::invalid_argument("quad_form: coefficient length " + std::to_string(a.size()) +
                                " does not match Gram order " + std::to_string(gram.order()));
  }
  return a.dot(gram.entries() * a);
}

}  // namespace rkhsd
