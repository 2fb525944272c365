#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "rkhsd/numerics.hpp"

namespace rkhsd {

/// psi(x, y) = erf(a x + b y + c). The direction (a, b) must be nonzero.
struct RidgeFunction {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
};

double ridge_eval(const RidgeFunction& r, double x, double y);

/// Ordered family of edge ridges. Coefficient beta_k belongs to ridges()[k].
class EdgeBasis {
 public:
  EdgeBasis() = default;
  explicit EdgeBasis(std::vector<RidgeFunction> ridges);

  Eigen::Index size() const { return static_cast<Eigen::Index>(ridges_.size()); }
  const std::vector<RidgeFunction>& ridges() const { return ridges_; }

 private:
  std::vector<RidgeFunction> ridges_;
};

/// Four orientations (0, 45, 90, 135 degrees) times `levels` parallel offsets.
///
/// Each ridge is erf(s (x cos t + y sin t - o)). For every orientation the
/// offsets o split the projection of the unit square onto the normal into
/// levels + 1 equal parts, so the ridge lines always cross the patch. Ordering
/// is orientation-major: all offsets of 0 degrees first, then 45, and so on.
EdgeBasis default_basis(int levels, double sharpness);

/// Kernel centers of an n x n patch, row-major: index r * n + c sits at
/// (x, y) = (c / (n - 1), r / (n - 1)). For n == 1 the single center is (0, 0).
std::vector<Point2> patch_grid(int n);

/// Number of polynomial coefficients (h0, h1, h2, h3) for 1, x, y, xy.
inline constexpr Eigen::Index kPolyTerms = 4;

/// Kernel expansion over the patch grid plus edge ridges plus a bilinear polynomial.
///
/// The flat coefficient layout is alpha (row-major grid order), then beta in
/// basis order, then h0..h3.
class SemiParametricModel {
 public:
  /// Zero coefficients on an n x n grid.
  SemiParametricModel(int n, KernelParams kernel, EdgeBasis basis);

  int n() const { return n_; }
  const KernelParams& kernel() const { return kernel_; }
  const EdgeBasis& basis() const { return basis_; }
  const std::vector<Point2>& grid() const { return grid_; }

  Eigen::Index num_alpha() const { return static_cast<Eigen::Index>(grid_.size()); }
  Eigen::Index num_beta() const { return basis_.size(); }
  Eigen::Index num_coeffs() const { return num_alpha() + num_beta() + kPolyTerms; }

  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  /// Throws std::invalid_argument on a length mismatch.
  void set_coeffs(const Eigen::VectorXd& coeffs);

  auto alpha() const { return coeffs_.head(num_alpha()); }
  auto beta() const { return coeffs_.segment(num_alpha(), num_beta()); }
  auto h() const { return coeffs_.tail(kPolyTerms); }
  auto alpha() { return coeffs_.head(num_alpha()); }
  auto beta() { return coeffs_.segment(num_alpha(), num_beta()); }
  auto h() { return coeffs_.tail(kPolyTerms); }

 private:
  int n_;
  KernelParams kernel_;
  EdgeBasis basis_;
  std::vector<Point2> grid_;
  Eigen::VectorXd coeffs_;
};

double model_eval(const SemiParametricModel& m, double x, double y);

/// Every basis function of the model evaluated at (x, y), in coefficient order.
Eigen::RowVectorXd basis_row(const SemiParametricModel& m, double x, double y);

/// Rows are basis_row at each grid point. The leading N^2 x N^2 block is the Gram matrix.
Eigen::MatrixXd design_matrix(const SemiParametricModel& m);

/// alpha^T G alpha. Throws std::invalid_argument when G does not match alpha.
double rkhs_norm_sq(const SemiParametricModel& m, const GramMatrix& gram);

// Text record used by test fixtures: "N K sigma" on the first line, then the
// flat coefficients separated by whitespace.
void write_model_record(std::ostream& out, const SemiParametricModel& m);
/// The basis is not part of the record; K must match basis.size().
SemiParametricModel read_model_record(std::istream& in, const EdgeBasis& basis);

}  // namespace rkhsd
