#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rkhsd/engine.hpp"

namespace rkhsd {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sets one EngineConfig field by name. `radius` also accepts "auto".
/// Throws ConfigError on an unknown key or an unparsable value.
void set_config_value(EngineConfig& cfg, std::string_view key, std::string_view value);

/// Applies a "key=value" override.
void apply_override(EngineConfig& cfg, std::string_view assignment);

/// Applies `key = value` lines on top of cfg. Blank lines and '#' comments are
/// ignored. Errors name the offending line.
void parse_config(EngineConfig& cfg, std::string_view text);
EngineConfig load_config_file(const std::string& path, EngineConfig base = {});

/// Every field, one `key = value` line each, in a fixed order. Round-trips
/// through parse_config exactly.
std::string config_to_text(const EngineConfig& cfg);

/// 16 hex digits of FNV-1a over config_to_text.
std::string config_digest(const EngineConfig& cfg);

}  // namespace rkhsd
