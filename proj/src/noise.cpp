#include "rkhsd/noise.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace rkhsd {
namespace {

void check_std(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("gaussian noise std must be finite and >= 0");
  }
}

void check_fraction(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("impulse fraction must lie in [0, 1]");
  }
}

void gaussian_stage(std::vector<double>& px, double s, Rng& rng) {
  if (s == 0.0) return;
  for (std::size_t k = 0; k < px.size(); k += 2) {
    const double u1 = 1.0 - rng.next_unit();  // (0, 1], keeps log finite
    const double u2 = rng.next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    px[k] = Image::clamp_intensity(px[k] + s * radius * std::cos(angle));
    if (k + 1 < px.size()) {
      px[k + 1] = Image::clamp_intensity(px[k + 1] + s * radius * std::sin(angle));
    }
  }
}

void impulse_stage(std::vector<double>& px, double p, Rng& rng) {
  if (p == 0.0) return;
  for (double& v : px) {
    if (rng.next_unit() < p) v = rng.next_unit() < 0.5 ? 0.0 : 255.0;
  }
}

std::vector<double> copy_pixels(const Image& img) {
  return {img.pixels().begin(), img.pixels().end()};
}

}  // namespace

Image add_gaussian_noise(const Image& img, double s, std::uint64_t seed) {
  check_std(s);
  Rng rng(seed);
  auto px = copy_pixels(img);
  gaussian_stage(px, s, rng);
  return Image(img.width(), img.height(), std::move(px));
}

Image add_impulse_noise(const Image& img, double p, std::uint64_t seed) {
  check_fraction(p);
  Rng rng(seed);
  auto px = copy_pixels(img);
  impulse_stage(px, p, rng);
  return Image(img.width(), img.height(), std::move(px));
}

Image add_mixed_noise(const Image& img, double s, double p, std::uint64_t seed) {
  check_std(s);
  check_fraction(p);
  Rng rng(seed);
  auto px = copy_pixels(img);
  gaussian_stage(px, s, rng);
  impulse_stage(px, p, rng);
  return Image(img.width(), img.height(), std::move(px));
}

void NoiseSpec::validate() const {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GaussianNoise>) {
          check_std(k.s);
        } else if constexpr (std::is_same_v<K, ImpulseNoise>) {
          check_fraction(k.p);
        } else {
          check_std(k.s);
          check_fraction(k.p);
        }
      },
      kind);
}

std::string NoiseSpec::describe() const {
  std::ostringstream out;
  std::visit(
      [&out](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GaussianNoise>) {
          out << "gaussian s=" << k.s;
        } else if constexpr (std::is_same_v<K, ImpulseNoise>) {
          out << "impulse p=" << std::fixed << std::setprecision(2) << k.p;
        } else {
          out << "mixed s=" << k.s << " p=" << std::fixed << std::setprecision(2) << k.p;
        }
      },
      kind);
  return out.str();
}

Image apply_noise(const Image& img, const NoiseSpec& spec) {
  spec.validate();
  return std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GaussianNoise>) {
          return add_gaussian_noise(img, k.s, spec.seed);
        } else if constexpr (std::is_same_v<K, ImpulseNoise>) {
          return add_impulse_noise(img, k.p, spec.seed);
        } else {
          return add_mixed_noise(img, k.s, k.p, spec.seed);
        }
      },
      spec.kind);
}

}  // namespace rkhsd
