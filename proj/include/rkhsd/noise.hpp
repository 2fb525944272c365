#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "rkhsd/image.hpp"

namespace rkhsd {

/// xorshift64* generator. The stream is identical on every platform.
class Rng {
 public:
  static constexpr std::uint64_t kZeroSeedRemap = 0x9E3779B97F4A7C15ULL;

  explicit Rng(std::uint64_t seed) : state_(seed == 0 ? kZeroSeedRemap : seed) {}

  std::uint64_t next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ULL;
  }

  /// Uniform on [0, 1) from the top 53 bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Pixels are visited row-major. Gaussian noise uses basic Box-Muller: each
// pair of uniforms (u1, u2) yields cos then sin variates for consecutive
// pixels; the sine of a trailing unpaired draw is discarded. Impulse noise
// draws one uniform per pixel, and a second one for corrupted pixels that
// picks 0 (< 0.5) or 255. A stage with s == 0 or p == 0 consumes nothing.

Image add_gaussian_noise(const Image& img, double s, std::uint64_t seed);
Image add_impulse_noise(const Image& img, double p, std::uint64_t seed);
/// Gaussian stage then impulse stage, sharing one stream.
Image add_mixed_noise(const Image& img, double s, double p, std::uint64_t seed);

struct GaussianNoise {
  double s = 0.0;
};
struct ImpulseNoise {
  double p = 0.0;
};
struct MixedNoise {
  double s = 0.0;
  double p = 0.0;
};

struct NoiseSpec {
  std::variant<GaussianNoise, ImpulseNoise, MixedNoise> kind;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument if s < 0 or p outside [0, 1].
  void validate() const;
  /// e.g. "gaussian s=20", "impulse p=0.30", "mixed s=10 p=0.20".
  std::string describe() const;
};

Image apply_noise(const Image& img, const NoiseSpec& spec);

}  // namespace rkhsd
