#include "rkhsd/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rkhsd {

Image::Image(int width, int height, double value) {
  if (width < 0 || height < 0) throw std::invalid_argument("image dimensions must be >= 0");
  width_ = width;
  height_ = height;
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 clamp_intensity(value));
}

Image::Image(int width, int height, std::vector<double> pixels) {
  if (width < 0 || height < 0) throw std::invalid_argument("image dimensions must be >= 0");
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("image " + std::to_string(width) + "x" + std::to_string(height) +
                                " needs " + std::to_string(width * height) + " pixels, got " +
                                std::to_string(pixels.size()));
  }
  for (double& v : pixels) {
    if (std::isnan(v)) throw std::invalid_argument("image pixels must not be NaN");
    v = clamp_intensity(v);
  }
  width_ = width;
  height_ = height;
  pixels_ = std::move(pixels);
}

}  // namespace rkhsd
