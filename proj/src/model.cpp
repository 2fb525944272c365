#include "rkhsd/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rkhsd {

double ridge_eval(const RidgeFunction& r, double x, double y) {
  return erf(r.a * x + r.b * y + r.c);
}

EdgeBasis::EdgeBasis(std::vector<RidgeFunction> ridges) : ridges_(std::move(ridges)) {
  for (std::size_t k = 0; k < ridges_.size(); ++k) {
    const auto& r = ridges_[k];
    if (!std::isfinite(r.a) || !std::isfinite(r.b) || !std::isfinite(r.c)) {
      throw std::invalid_argument("ridge " + std::to_string(k) + " has non-finite parameters");
    }
    if (r.a == 0.0 && r.b == 0.0) {
      throw std::invalid_argument("ridge " + std::to_string(k) + " has zero direction");
    }
  }
}

EdgeBasis default_basis(int levels, double sharpness) {
  if (levels < 1) throw std::invalid_argument("default_basis: levels must be >= 1");
  if (!(sharpness > 0.0) || !std::isfinite(sharpness)) {
    throw std::invalid_argument("default_basis: sharpness must be positive");
  }
  constexpr double r = std::numbers::sqrt2 / 2.0;
  // Unit normals for 0, 45, 90 and 135 degrees.
  constexpr std::array<Point2, 4> normals{{{1.0, 0.0}, {r, r}, {0.0, 1.0}, {-r, r}}};

  std::vector<RidgeFunction> ridges;
  ridges.reserve(4 * static_cast<std::size_t>(levels));
  for (const auto& nrm : normals) {
    // Projection range of the unit square's corners onto the normal.
    double lo = 0.0;
    double hi = 0.0;
    for (const Point2 corner : {Point2{0, 0}, Point2{1, 0}, Point2{0, 1}, Point2{1, 1}}) {
      const double proj = corner.x * nrm.x + corner.y * nrm.y;
      lo = std::min(lo, proj);
      hi = std::max(hi, proj);
    }
    for (int j = 1; j <= levels; ++j) {
      const double offset = lo + (hi - lo) * j / (levels + 1);
      ridges.push_back({sharpness * nrm.x, sharpness * nrm.y, -sharpness * offset});
    }
  }
  return EdgeBasis(std::move(ridges));
}

std::vector<Point2> patch_grid(int n) {
  if (n < 1) throw std::invalid_argument("patch_grid: n must be positive");
  std::vector<Point2> grid;
  grid.reserve(static_cast<std::size_t>(n) * n);
  const double step = n == 1 ? 0.0 : 1.0 / (n - 1);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) grid.push_back({col * step, row * step});
  }
  return grid;
}

SemiParametricModel::SemiParametricModel(int n, KernelParams kernel, EdgeBasis basis)
    : n_(n), kernel_(kernel), basis_(std::move(basis)), grid_(patch_grid(n)) {
  coeffs_ = Eigen::VectorXd::Zero(num_coeffs());
}

void SemiParametricModel::set_coeffs(const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != num_coeffs()) {
    throw std::invalid_argument("model expects " + std::to_string(num_coeffs()) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  }
  coeffs_ = coeffs;
}

Eigen::RowVectorXd basis_row(const SemiParametricModel& m, double x, double y) {
  Eigen::RowVectorXd row(m.num_coeffs());
  const Point2 q{x, y};
  Eigen::Index col = 0;
  for (const auto& p : m.grid()) row(col++) = gaussian_kernel(p, q, m.kernel());
  for (const auto& r : m.basis().ridges()) row(col++) = ridge_eval(r, x, y);
  row(col++) = 1.0;
  row(col++) = x;
  row(col++) = y;
  row(col++) = x * y;
  return row;
}

double model_eval(const SemiParametricModel& m, double x, double y) {
  return basis_row(m, x, y).dot(m.coeffs());
}

Eigen::MatrixXd design_matrix(const SemiParametricModel& m) {
  const GramMatrix gram(m.grid(), m.kernel());
  Eigen::MatrixXd d(m.num_alpha(), m.num_coeffs());
  d.leftCols(m.num_alpha()) = gram.entries();
  for (Eigen::Index i = 0; i < m.num_alpha(); ++i) {
    const Point2 p = m.grid()[static_cast<std::size_t>(i)];
    Eigen::Index col = m.num_alpha();
    for (const auto& r : m.basis().ridges()) d(i, col++) = ridge_eval(r, p.x, p.y);
    d(i, col++) = 1.0;
    d(i, col++) = p.x;
    d(i, col++) = p.y;
    d(i, col++) = p.x * p.y;
  }
  return d;
}

double rkhs_norm_sq(const SemiParametricModel& m, const GramMatrix& gram) {
  return quad_form(gram, m.alpha());
}

void write_model_record(std::ostream& out, const SemiParametricModel& m) {
  const auto old_precision = out.precision(17);
  out << m.n() << ' ' << m.num_beta() << ' ' << m.kernel().sigma() << '\n';
  for (Eigen::Index i = 0; i < m.num_coeffs(); ++i) {
    out << m.coeffs()(i) << (i + 1 == m.num_coeffs() ? '\n' : ' ');
  }
  out.precision(old_precision);
}

SemiParametricModel read_model_record(std::istream& in, const EdgeBasis& basis) {
  int n = 0;
  Eigen::Index k = 0;
  double sigma = 0.0;
  if (!(in >> n >> k >> sigma)) throw std::runtime_error("model record: bad header");
  if (n < 1) throw std::runtime_error("model record: patch size must be positive");
  if (k != basis.size()) {
    throw std::runtime_error("model record: K = " + std::to_string(k) +
                             " but basis has " + std::to_string(basis.size()) + " ridges");
  }
  SemiParametricModel m(n, KernelParams(sigma), basis);
  Eigen::VectorXd c(m.num_coeffs());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!(in >> c(i))) throw std::runtime_error("model record: truncated coefficients");
  }
  m.set_coeffs(c);
  return m;
}

}  // namespace rkhsd
