#pragma once

#include <limits>
#include <string>

#include "rkhsd/image.hpp"

namespace rkhsd {

/// Returned by psnr() for identical images.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();
/// Text outputs cap PSNR at this value.
inline constexpr double kPsnrTextCap = 99.0;

/// Mean squared pixel difference. Throws std::invalid_argument on a size mismatch.
double mse(const Image& a, const Image& b);

/// 10 log10(255^2 / mse), or kPsnrIdentical when mse is zero.
double psnr(const Image& a, const Image& b);

/// Two decimals, capped at 99.00.
std::string format_psnr(double db);

}  // namespace rkhsd
