#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace rkhsd {

/// Grayscale image, row-major, intensities clamped to [0, 255].
class Image {
 public:
  Image() = default;
  /// Filled with `value` (clamped).
  Image(int width, int height, double value = 0.0);
  /// Takes row-major pixels; throws std::invalid_argument on a size mismatch.
  Image(int width, int height, std::vector<double> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  double at(int row, int col) const { return pixels_[index(row, col)]; }
  void set(int row, int col, double v) { pixels_[index(row, col)] = clamp_intensity(v); }

  std::span<const double> pixels() const { return pixels_; }

  static double clamp_intensity(double v) { return std::clamp(v, 0.0, 255.0); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

}  // namespace rkhsd
