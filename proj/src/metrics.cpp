#include "rkhsd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rkhsd {

double mse(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("mse: image dimensions differ");
  }
  if (a.empty()) throw std::invalid_argument("mse: empty images");
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const double d = pa[k] - pb[k];
    sum += d * d;
  }
  return sum / static_cast<double>(pa.size());
}

double psnr(const Image& a, const Image& b) {
  const double e = mse(a, b);
  if (e == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(255.0 * 255.0 / e);
}

std::string format_psnr(double db) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::min(db, kPsnrTextCap));
  return buf;
}

}  // namespace rkhsd
