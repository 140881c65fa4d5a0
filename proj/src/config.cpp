#include "arls/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace arls {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError(key, "key '" + key + "': expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long parsed = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return static_cast<int>(parsed);
    } catch (const std::exception&) {
        throw ConfigError(key, "key '" + key + "': expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key, "key '" + key + "': expected a boolean, got '" + value + "'");
}

} // namespace

void RunConfig::apply_kv(const std::string& key, const std::string& value) {
    if (key == "segment_length") scene.segment_length = parse_double(key, value);
    else if (key == "resolution") scene.resolution = parse_int(key, value);
    else if (key == "vehicle_length") scene.vehicle_length = parse_double(key, value);
    else if (key == "vehicle_width") scene.vehicle_width = parse_double(key, value);
    else if (key == "vehicle_intensity") scene.vehicle_intensity = parse_int(key, value);
    else if (key == "background_intensity") scene.background_intensity = parse_int(key, value);
    else if (key == "true_speed") scene.true_speed = parse_double(key, value);
    else if (key == "blur_fraction") scene.blur_fraction = parse_double(key, value);
    else if (key == "blur_radius") scene.blur_radius = parse_int(key, value);
    else if (key == "noise_amplitude") scene.noise_amplitude = parse_int(key, value);
    else if (key == "frame_rate") scene.frame_rate = parse_double(key, value);
    else if (key == "camera_height") camera_height = parse_double(key, value);
    else if (key == "threshold") detection.threshold = parse_int(key, value);
    else if (key == "min_area") detection.min_area = parse_int(key, value);
    else if (key == "quality_min_gradient")
        detection.quality_min_gradient = parse_double(key, value);
    else if (key == "lead_time") controller.lead_time = parse_double(key, value);
    else if (key == "lag_margin") controller.lag_margin = parse_double(key, value);
    else if (key == "processing_latency")
        controller.processing_latency = parse_double(key, value);
    else if (key == "v_fallback") controller.v_fallback = parse_double(key, value);
    else if (key == "trials") trials = parse_int(key, value);
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_double(key, value));
    else if (key == "max_offset") success_rule.max_offset = parse_double(key, value);
    else if (key == "require_reset") success_rule.require_reset = parse_bool(key, value);
    else if (key == "jobs") jobs = parse_int(key, value);
    else throw ConfigError(key, "unknown config key '" + key + "'");
}

void RunConfig::apply_line(const std::string& raw) {
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) return;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw ConfigError(line, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(key, "missing key before '=' in '" + line + "'");
    apply_kv(key, value);
}

void RunConfig::apply_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::string line;
    while (std::getline(in, line)) apply_line(line);
}

Calibration to_calibration_impl(const RunConfig& config) {
    return calibrate(config.scene.segment_length, config.scene.resolution,
                     config.scene.frame_rate, config.scene.segment_length,
                     config.camera_height);
}

Calibration RunConfig::to_calibration() const { return to_calibration_impl(*this); }

Scenario RunConfig::to_scenario() const {
    scene.validate();
    if (trials < 1) throw ConfigError("trials", "trials must be >= 1");
    if (jobs < 1) throw ConfigError("jobs", "jobs must be >= 1");
    if (controller.lead_time < 0.0) throw ConfigError("lead_time", "lead_time must be >= 0");
    if (controller.lag_margin < 0.0) throw ConfigError("lag_margin", "lag_margin must be >= 0");
    if (controller.processing_latency < 0.0)
        throw ConfigError("processing_latency", "processing_latency must be >= 0");
    if (controller.v_fallback < 0.0) throw ConfigError("v_fallback", "v_fallback must be >= 0");

    Scenario scenario;
    scenario.scene = scene;
    scenario.calibration = to_calibration();
    scenario.controller = controller;
    scenario.detection = detection;
    scenario.lamp_positions = LampBank::even_positions(scene.segment_length);
    scenario.trials = trials;
    scenario.seed = seed;
    scenario.success_rule = success_rule;
    return scenario;
}

} // namespace arls
