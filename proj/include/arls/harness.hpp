#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arls/controller.hpp"
#include "arls/detection.hpp"
#include "arls/kinematics.hpp"
#include "arls/scene.hpp"

namespace arls {

/// Detection/pipeline knobs shared by the trial runner and the `track` CLI.
struct DetectionParams {
    int threshold = 10;          // intensity units for frame differencing
    std::int64_t min_area = 4;   // pixels; smaller detections are noise
    /// Minimum adjacent-pixel gradient for a frame to count as sharp enough
    /// to process. Negative means auto: half the scene's nominal contrast.
    /// Zero disables the gate.
    double quality_min_gradient = -1.0;
};

double resolve_quality_gate(const DetectionParams& params, const SceneConfig& scene);

struct SuccessRule {
    double max_offset = 0.0;   // meters; a lamp must switch on at or before this offset
    bool require_reset = true; // passed lamps must also be switched off
};

/// Everything one batch of trials depends on. Outcomes are a pure function
/// of this value: trial i uses noise seeds derived from seed + i.
struct Scenario {
    SceneConfig scene;
    Calibration calibration;
    ControllerConfig controller;
    DetectionParams detection;
    std::array<double, LampBank::kLampCount> lamp_positions{};
    int trials = 100;
    std::uint64_t seed = 1;
    SuccessRule success_rule;
};

enum class FailureReason { NoDetection, NoSpeed, LateSwitch, MissingReset };
const char* failure_reason_name(FailureReason reason);

struct TrialReport {
    double v_true = 0.0;
    std::optional<double> v_arls;      // mean tracked speed, m/s
    std::optional<double> delta_v_pct; // |v_arls - v_true| / v_true * 100
    double blur_fraction = 0.0;
    std::array<std::optional<double>, LampBank::kLampCount> offsets{};
    bool success = false;
    std::optional<FailureReason> failure_reason;
    std::vector<LampEvent> events;
    std::uint8_t final_register = 0;
};

struct BatchSummary {
    double v_true = 0.0;
    double blur_fraction = 0.0;
    int trials = 0;
    int successes = 0;
    double performance_pct = 0.0;
    std::optional<double> mean_v_arls;
    std::optional<double> mean_delta_v_pct;
    std::string offset_class;              // "~0", "<0", ">0" or "n/a"
    std::array<int, 4> failure_counts{};   // indexed by FailureReason
};

/// Per-frame pipeline: sharpness gate, background subtraction, edge-clip
/// rejection, min-area demotion, track update. Frames must arrive in
/// strictly increasing index order and match the reference dimensions.
class Tracker {
public:
    Tracker(Frame reference, Calibration cal, DetectionParams params, double quality_gate);

    struct Step {
        Detection detection;          // what the track consumed (possibly empty)
        bool quality_rejected = false;
        bool edge_clipped = false;
        bool demoted_small = false;
    };

    Step step(const Frame& frame);

    const TrackState& track() const { return track_; }
    bool saw_object() const { return saw_object_; }
    const Frame& reference() const { return reference_; }

private:
    Frame reference_;
    Calibration cal_;
    DetectionParams params_;
    double quality_gate_;
    TrackState track_;
    bool saw_object_ = false;
};

/// Largest absolute intensity step between horizontally adjacent pixels;
/// the sharpness measure behind the quality gate.
double max_adjacent_gradient(const Frame& frame);

/// Runs one full traverse: renders every frame (blur schedule + seeded
/// noise), feeds the pipeline, drives the lamp bank, then scores the trial
/// against the ground-truth trajectory. Deterministic in
/// (scenario, trial_index).
TrialReport run_trial(const Scenario& scenario, int trial_index);

std::vector<TrialReport> run_trials(const Scenario& scenario, int jobs = 1);

/// Aggregates reports: performance percentage, means over successful
/// trials, pooled offset classification.
BatchSummary summarize(const Scenario& scenario, const std::vector<TrialReport>& reports);

BatchSummary run_batch(const Scenario& scenario, int jobs = 1);

/// |v_arls - v_s| / v_s * 100. v_s must be positive.
double delta_v_pct(double v_s, double v_arls);

/// Per pair: true iff v_arls lies within band_pct percent of v_s.
std::vector<bool> correlation_band_check(const std::vector<std::pair<double, double>>& pairs,
                                         double band_pct);

/// One batch per (speed, blur) combination -- the full grid by default, or
/// index-paired rows when `paired` is set (lists must then have equal
/// length). Lists must be nonempty.
std::vector<BatchSummary> sweep(const Scenario& base, const std::vector<double>& speeds,
                                const std::vector<double>& blur_levels, bool paired = false,
                                int jobs = 1);

/// Batch rows as CSV with the fixed header
/// v_true,v_arls,delta_v_pct,blur_pct,offset_class,performance_pct.
std::string report_csv(const std::vector<BatchSummary>& rows);

/// Locale-independent "%.6g" formatting used for every CSV number.
std::string format_number(double value);

} // namespace arls
