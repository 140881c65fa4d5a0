#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "arls/harness.hpp"

namespace arls {

/// Configuration error that names the offending key.
struct ConfigError : std::runtime_error {
    std::string key;

    ConfigError(std::string k, const std::string& message)
        : std::runtime_error(message), key(std::move(k)) {}
};

/// Flat key = value run configuration. Every key has a default; a config
/// file overrides defaults and command-line flags override the file.
struct RunConfig {
    SceneConfig scene;
    DetectionParams detection;
    ControllerConfig controller;
    double camera_height = 1.075; // meters, informational
    int trials = 100;
    std::uint64_t seed = 1;
    SuccessRule success_rule;
    int jobs = 1;

    static RunConfig defaults() { return RunConfig{}; }

    /// Applies `key = value` lines ('#' starts a comment). Unknown keys and
    /// unparsable values raise ConfigError naming the key.
    void apply_file(const std::filesystem::path& path);
    void apply_line(const std::string& line);
    void apply_kv(const std::string& key, const std::string& value);

    /// Validates and assembles the derived pieces. The calibration maps the
    /// full segment onto the full frame width.
    Calibration to_calibration() const;
    Scenario to_scenario() const;
};

} // namespace arls
