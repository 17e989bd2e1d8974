/**
 * @file config.hpp
 * @brief Flat key=value run configuration.
 *
 * Lines are `key = value`; `#` starts a comment. Unknown keys are rejected.
 * Keys: scales, directions, gamma, eta, window_n, nms_p, nms_q, threshold, rho,
 * boundary, engine, nms_scale, seed, format, tau, repeat_radius.
 */
#pragma once

#include "gcorner/detector.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcorner {

struct RunConfig {
    DetectorConfig detector;
    std::uint64_t seed = 20240601;
    std::string format = "json";  ///< corner export: json or csv
    double tau = 4.0;             ///< ground-truth match distance
    double repeat_radius = 2.0;   ///< repeatability match distance

    /// Throws ConfigError for unknown keys or malformed values.
    void set(std::string_view key, std::string_view value);
    /// Canonical text with every key, defaults filled in.
    std::string to_text() const;
    void validate() const;
};

RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// FNV-1a 64 of the canonical detector text, as 16 hex digits.
std::string config_hash(const DetectorConfig& config);
std::string detector_text(const DetectorConfig& config);
/// Canonical (key, value) pairs of the detector settings, in a fixed order.
std::vector<std::pair<std::string, std::string>> detector_fields(const DetectorConfig& config);
/// Shortest round-trip decimal text.
std::string format_double(double v);

}  // namespace gcorner
