#include "rkhsd/config.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rkhsd {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void set_config_value(EngineConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  auto real = [&] { return parse_number<double>(key, value); };
  auto integer = [&] { return parse_number<int>(key, value); };

  if (key == "patch_n") cfg.patch_n = integer();
  else if (key == "sigma") cfg.sigma = real();
  else if (key == "lambda") cfg.lambda = real();
  else if (key == "mu_smooth") cfg.mu_smooth = real();
  else if (key == "mu_edge") cfg.mu_edge = real();
  else if (key == "mu1_smooth") cfg.mu1_smooth = real();
  else if (key == "mu1_edge") cfg.mu1_edge = real();
  else if (key == "edge_threshold") cfg.edge_threshold = real();
  else if (key == "basis_levels") cfg.basis_levels = integer();
  else if (key == "basis_sharpness") cfg.basis_sharpness = real();
  else if (key == "max_iters") cfg.max_iters = integer();
  else if (key == "step_c") cfg.step_c = real();
  else if (key == "tol") cfg.tol = real();
  else if (key == "radius") {
    if (value == "auto") cfg.radius.reset();
    else cfg.radius = real();
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_override(EngineConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  set_config_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void parse_config(EngineConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_override(cfg, line);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

EngineConfig load_config_file(const std::string& path, EngineConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    parse_config(base, buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return base;
}

std::string config_to_text(const EngineConfig& cfg) {
  std::ostringstream out;
  out << "patch_n = " << cfg.patch_n << '\n'
      << "sigma = " << format_double(cfg.sigma) << '\n'
      << "lambda = " << format_double(cfg.lambda) << '\n'
      << "mu_smooth = " << format_double(cfg.mu_smooth) << '\n'
      << "mu_edge = " << format_double(cfg.mu_edge) << '\n'
      << "mu1_smooth = " << format_double(cfg.mu1_smooth) << '\n'
      << "mu1_edge = " << format_double(cfg.mu1_edge) << '\n'
      << "edge_threshold = " << format_double(cfg.edge_threshold) << '\n'
      << "basis_levels = " << cfg.basis_levels << '\n'
      << "basis_sharpness = " << format_double(cfg.basis_sharpness) << '\n'
      << "max_iters = " << cfg.max_iters << '\n'
      << "step_c = " << format_double(cfg.step_c) << '\n'
      << "radius = " << (cfg.radius ? format_double(*cfg.radius) : std::string("auto")) << '\n'
      << "tol = " << format_double(cfg.tol) << '\n';
  return out.str();
}

std::string config_digest(const EngineConfig& cfg) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char ch : config_to_text(cfg)) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace rkhsd
