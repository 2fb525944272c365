#include "rkhsd/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace rkhsd {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view data) : data_(data) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= data_.size(); }
  unsigned char peek() const { return static_cast<unsigned char>(data_[pos_]); }
  unsigned char take() { return static_cast<unsigned char>(data_[pos_++]); }
  std::size_t remaining() const { return data_.size() - pos_; }

  // Whitespace and '#' comments running to end of line.
  void skip_separators() {
    while (!at_end()) {
      if (std::isspace(peek())) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n' && peek() != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(const char* what) {
    skip_separators();
    if (at_end()) throw PgmParseError(std::string("unexpected end of data reading ") + what, pos_);
    if (!std::isdigit(peek())) throw PgmParseError(std::string("expected ") + what, pos_);
    unsigned long v = 0;
    while (!at_end() && std::isdigit(peek())) {
      v = v * 10 + (take() - '0');
      if (v > 0xFFFFFFFFul) throw PgmParseError(std::string(what) + " is too large", pos_);
    }
    return v;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

Image read_pgm(std::string_view bytes) {
  Cursor cur(bytes);
  if (cur.remaining() < 2 || cur.take() != 'P') throw PgmParseError("bad magic number", 0);
  const unsigned char kind = cur.take();
  if (kind != '5' && kind != '2') throw PgmParseError("bad magic number", 1);
  const bool binary = kind == '5';
  if (cur.at_end() || !(std::isspace(cur.peek()) || cur.peek() == '#')) {
    throw PgmParseError("expected whitespace after magic number", cur.pos());
  }

  const std::size_t width_at = cur.pos();
  const unsigned long width = cur.read_uint("width");
  const unsigned long height = cur.read_uint("height");
  if (width == 0 || height == 0 || width > 1u << 16 || height > 1u << 16) {
    throw PgmParseError("invalid image dimensions", width_at);
  }
  const std::size_t maxval_at = cur.pos();
  const unsigned long maxval = cur.read_uint("maxval");
  if (maxval == 0) throw PgmParseError("maxval must be positive", maxval_at);
  if (maxval > 255) {
    throw PgmUnsupportedError("PGM maxval " + std::to_string(maxval) +
                              " is not supported (only 8-bit images)");
  }
  const double scale = 255.0 / static_cast<double>(maxval);

  const std::size_t count = width * height;
  std::vector<double> pixels;
  pixels.reserve(count);
  if (binary) {
    if (cur.at_end() || !std::isspace(cur.peek())) {
      throw PgmParseError("expected single whitespace before raster", cur.pos());
    }
    cur.take();
    if (cur.remaining() < count) {
      throw PgmParseError("truncated raster: need " + std::to_string(count) + " bytes, have " +
                              std::to_string(cur.remaining()),
                          cur.pos());
    }
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t at = cur.pos();
      const unsigned v = cur.take();
      if (v > maxval) throw PgmParseError("sample exceeds maxval", at);
      pixels.push_back(v * scale);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      cur.skip_separators();
      const std::size_t at = cur.pos();
      const unsigned long v = cur.read_uint("sample");
      if (v > maxval) throw PgmParseError("sample exceeds maxval", at);
      pixels.push_back(static_cast<double>(v) * scale);
    }
  }
  return Image(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::string write_pgm(const Image& img, PgmFormat format) {
  auto quantize = [](double v) {
    return static_cast<unsigned>(Image::clamp_intensity(std::floor(v + 0.5)));
  };
  std::ostringstream out;
  out << (format == PgmFormat::P5 ? "P5" : "P2") << '\n'
      << img.width() << ' ' << img.height() << "\n255\n";
  if (format == PgmFormat::P5) {
    for (double v : img.pixels()) out.put(static_cast<char>(quantize(v)));
  } else {
    for (int r = 0; r < img.height(); ++r) {
      for (int c = 0; c < img.width(); ++c) {
        out << quantize(img.at(r, c)) << (c + 1 == img.width() ? '\n' : ' ');
      }
    }
  }
  return out.str();
}

Image read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("error reading " + path.string());
  return read_pgm(bytes);
}

void write_pgm_file(const std::filesystem::path& path, const Image& img, PgmFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string bytes = write_pgm(img, format);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace rkhsd
