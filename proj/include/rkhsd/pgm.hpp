#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rkhsd/image.hpp"

namespace rkhsd {

enum class PgmFormat { P5, P2 };

/// Malformed PGM data; offset() is the byte position where decoding failed.
class PgmParseError : public std::runtime_error {
 public:
  PgmParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed PGM that this reader does not handle (maxval > 255).
class PgmUnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes P5 or P2. Header comments and arbitrary whitespace are accepted.
/// Samples are rescaled to 0..255 when maxval < 255.
Image read_pgm(std::string_view bytes);

/// Pixels are rounded half-up and clamped. P5 output is
/// "P5\n<w> <h>\n255\n" followed by w*h bytes.
std::string write_pgm(const Image& img, PgmFormat format = PgmFormat::P5);

/// File wrappers; I/O failures throw std::runtime_error.
Image read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const Image& img,
                    PgmFormat format = PgmFormat::P5);

}  // namespace rkhsd
