#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rkhsd {

/// A location on the normalized patch plane.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Width of the Gaussian kernel, in normalized patch coordinates.
class KernelParams {
 public:
  explicit KernelParams(double sigma);

  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

/// Error function via the Abramowitz-Stegun 7.1.26 rational approximation
/// (absolute error <= 1.5e-7). Odd, with |erf(x)| < 1 for every finite x.
double erf(double x);

/// exp(-|p - q|^2 / (2 sigma^2)).
double gaussian_kernel(const Point2& p, const Point2& q, const KernelParams& params);

/// Kernel evaluations between every pair of points of a grid.
///
/// Only the upper triangle is evaluated; the lower triangle is a mirror, so the
/// matrix is exactly symmetric. The diagonal is exactly one. Nothing is added
/// to the diagonal and the matrix is never factorized outside of tests.
class GramMatrix {
 public:
  GramMatrix(std::span<const Point2> grid, const KernelParams& params);

  Eigen::Index order() const { return entries_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

/// Throws std::invalid_argument on an empty grid.
GramMatrix build_gram(std::span<const Point2> grid, const KernelParams& params);

/// a^T G a. Throws std::invalid_argument when a.size() != G.order().
double quad_form(const GramMatrix& gram, const Eigen::VectorXd& a);

}  // namespace rkhsd
