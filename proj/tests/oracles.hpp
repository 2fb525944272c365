#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library paths it is used to check.

#include <cmath>
#include <algorithm>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace rkhsd::oracle {

// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

// (2 / sqrt(pi)) * integral_0^x exp(-t^2) dt by quadrature, tolerance 1e-10.
inline double erf_quadrature(double x) {
  const double integral =
      adaptive_simpson([](double t) { return std::exp(-t * t); }, 0.0, std::fabs(x), 1e-10);
  const double v = 2.0 / std::sqrt(std::numbers::pi) * integral;
  return x < 0.0 ? -v : v;
}

struct Pt {
  double x;
  double y;
};

// Grid of an n x n patch, row-major, x along columns.
inline std::vector<Pt> grid(int n) {
  std::vector<Pt> g;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      g.push_back({n == 1 ? 0.0 : double(c) / (n - 1), n == 1 ? 0.0 : double(r) / (n - 1)});
    }
  }
  return g;
}

inline double kernel(Pt p, Pt q, double sigma) {
  const double d2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

struct Ridge {
  double a;
  double b;
  double c;
};

// Term-by-term expansion, using the platform erf.
inline double expansion(const std::vector<Pt>& g, double sigma, const std::vector<Ridge>& ridges,
                        const std::vector<double>& alpha, const std::vector<double>& beta,
                        const double (&h)[4], double x, double y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) sum += alpha[i] * kernel(g[i], {x, y}, sigma);
  for (std::size_t k = 0; k < ridges.size(); ++k) {
    sum += beta[k] * std::erf(ridges[k].a * x + ridges[k].b * y + ridges[k].c);
  }
  return sum + h[0] + h[1] * x + h[2] * y + h[3] * x * y;
}

// Double loop a_i a_j k(p_i, p_j).
inline double kernel_quadratic(const std::vector<Pt>& g, double sigma,
                               const std::vector<double>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) s += a[i] * a[j] * kernel(g[i], g[j], sigma);
  }
  return s;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

// Exhaustive search for min sum_i |(D c)_i - v_i| over the lattice
// c_j in center_j + {-delta, 0, +delta}. D is built here from the kernel and
// the bilinear polynomial (no ridges), independently of the library.
inline double l1_lattice_minimum(int n, double sigma, const std::vector<double>& values,
                                 const Eigen::VectorXd& center, double delta) {
  const auto g = grid(n);
  const int rows = n * n;
  const int dim = rows + 4;
  Eigen::MatrixXd d(rows, dim);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < rows; ++j) d(i, j) = kernel(g[i], g[j], sigma);
    d(i, rows) = 1.0;
    d(i, rows + 1) = g[i].x;
    d(i, rows + 2) = g[i].y;
    d(i, rows + 3) = g[i].x * g[i].y;
  }
  Eigen::VectorXd base = d * center;
  for (int i = 0; i < rows; ++i) base(i) -= values[static_cast<std::size_t>(i)];

  // Odometer over {-1, 0, 1}^dim, updating the residual one coordinate at a time.
  std::vector<int> digit(static_cast<std::size_t>(dim), -1);
  Eigen::VectorXd residual = base - delta * d.rowwise().sum();
  double best = residual.cwiseAbs().sum();
  while (true) {
    int j = 0;
    while (j < dim && digit[static_cast<std::size_t>(j)] == 1) {
      residual -= 2.0 * delta * d.col(j);
      digit[static_cast<std::size_t>(j)] = -1;
      ++j;
    }
    if (j == dim) break;
    residual += delta * d.col(j);
    ++digit[static_cast<std::size_t>(j)];
    best = std::min(best, residual.cwiseAbs().sum());
  }
  return best;
}

}  // namespace rkhsd::oracle
