#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spherebot/simulator.hpp"
#include "spherebot/sweep.hpp"

namespace spherebot::cli {

/// Bad or unreadable configuration. Maps to the usage exit status.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orthogonality slack accepted for a user-supplied attitude matrix before it
/// is projected onto SO(3).
inline constexpr double kConfigAttitudeTolerance = 1e-6;

/// Parses a scenario document with sections [params], [gains], [initial] and
/// an optional [sim]. `origin` names the source in error messages.
Scenario parse_scenario(std::string_view toml_text, std::string_view origin = "config");

Scenario load_scenario(const std::filesystem::path& path);

/// Reads the optional [grid] section of a document. Attitudes may be given by
/// preset name or as 9-entry row-major matrices.
SweepGrid parse_grid(std::string_view toml_text, std::string_view origin = "config");

/// Row-major 9-vector to rotation: projected if within
/// kConfigAttitudeTolerance of orthogonal with det > 0, rejected otherwise.
Rotation attitude_from_entries(const std::array<double, 9>& entries);

/// Named attitude: "identity", "fig2" or "fig3".
Rotation named_attitude(std::string_view name);

}  // namespace spherebot::cli
