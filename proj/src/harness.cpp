#include "arls/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "arls/rng.hpp"

namespace arls {

const char* failure_reason_name(FailureReason reason) {
    switch (reason) {
        case FailureReason::NoDetection: return "NoDetection";
        case FailureReason::NoSpeed: return "NoSpeed";
        case FailureReason::LateSwitch: return "LateSwitch";
        case FailureReason::MissingReset: return "MissingReset";
    }
    return "?";
}

double resolve_quality_gate(const DetectionParams& params, const SceneConfig& scene) {
    if (params.quality_min_gradient >= 0.0) return params.quality_min_gradient;
    return std::abs(scene.vehicle_intensity - scene.background_intensity) / 2.0;
}

double max_adjacent_gradient(const Frame& frame) {
    int best = 0;
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x + 1 < frame.width; ++x)
            best = std::max(best, std::abs(static_cast<int>(frame.at(x + 1, y)) -
                                           static_cast<int>(frame.at(x, y))));
    return static_cast<double>(best);
}

Tracker::Tracker(Frame reference, Calibration cal, DetectionParams params, double quality_gate)
    : reference_(std::move(reference)), cal_(cal), params_(params), quality_gate_(quality_gate) {}

Tracker::Step Tracker::step(const Frame& frame) {
    if (!frame.same_shape(reference_))
        throw std::invalid_argument("frame dimensions differ from the reference");

    Step result;
    result.detection = Detection{frame.index, 0, std::nullopt};

    if (quality_gate_ > 0.0 && max_adjacent_gradient(frame) < quality_gate_) {
        result.quality_rejected = true; // too blurred to process
    } else {
        const ForegroundMask mask = subtract(frame, reference_, params_.threshold);
        Detection d = centroid(mask);
        if (d.has_object() && touches_motion_edges(mask)) {
            result.edge_clipped = true; // partially visible, centroid biased
        } else if (d.has_object() && d.area < params_.min_area) {
            result.demoted_small = true;
        } else if (d.has_object()) {
            result.detection = d;
            saw_object_ = true;
        }
    }

    track_ = update_track(std::move(track_), result.detection, cal_);
    return result;
}

double delta_v_pct(double v_s, double v_arls) {
    if (v_s <= 0.0) throw std::invalid_argument("reference speed must be positive");
    return std::abs(v_arls - v_s) / v_s * 100.0;
}

std::vector<bool> correlation_band_check(const std::vector<std::pair<double, double>>& pairs,
                                         double band_pct) {
    if (band_pct <= 0.0) throw std::invalid_argument("band percentage must be positive");
    std::vector<bool> in_band;
    in_band.reserve(pairs.size());
    for (const auto& [v_s, v_arls] : pairs)
        in_band.push_back(std::abs(v_arls - v_s) <= band_pct / 100.0 * v_s);
    return in_band;
}

TrialReport run_trial(const Scenario& scenario, int trial_index) {
    const SceneConfig& scene = scenario.scene;
    scene.validate();

    const std::uint64_t trial_seed = scenario.seed + static_cast<std::uint64_t>(trial_index);
    const Calibration& cal = scenario.calibration;
    const double gate = resolve_quality_gate(scenario.detection, scene);

    Tracker tracker(background_frame(scene), cal, scenario.detection, gate);
    LampBank bank(scenario.lamp_positions, scene.segment_length);

    const int frames = scene.frame_count();
    for (int k = 0; k < frames; ++k) {
        const double t = static_cast<double>(k) / scene.frame_rate;
        Frame frame = render_scene(scene, t);
        frame.index = k;
        if (scene.blur_radius > 0 && blur_scheduled(scene.blur_fraction, k))
            frame = apply_blur(frame, scene.blur_radius);
        if (scene.noise_amplitude > 0)
            frame = apply_noise(frame, scene.noise_amplitude, mix_seed(trial_seed, k));

        tracker.step(frame);
        if (tracker.track().has_position())
            control_step(bank, tracker.track(), scenario.controller, k);
    }

    // Ground truth: the vehicle center moves at the configured speed with
    // the leading edge entering the segment at t = 0.
    const double v_true = scene.true_speed;
    const double half_length = scene.vehicle_length / 2.0;
    const auto r_gt = [v_true, half_length](double t) { return v_true * t - half_length; };
    const double t_end = static_cast<double>(frames - 1) * cal.frame_interval;
    const double r_end = r_gt(t_end);

    TrialReport report;
    report.v_true = v_true;
    report.blur_fraction = scene.blur_fraction;
    report.events = bank.events();
    report.final_register = bank.port_register();
    report.v_arls = tracker.track().v_mean;
    if (report.v_arls && v_true > 0.0)
        report.delta_v_pct = delta_v_pct(v_true, *report.v_arls);

    for (int i = 0; i < LampBank::kLampCount; ++i)
        report.offsets[i] = switch_on_offset(bank, i, r_gt, cal.frame_interval,
                                             scenario.controller.processing_latency);

    // A lamp is required if the ground-truth trajectory reaches it, and its
    // reset is required once the trajectory clears it by the lag margin.
    bool any_required = false;
    bool switching_ok = true;
    bool resets_ok = true;
    for (int i = 0; i < LampBank::kLampCount; ++i) {
        const double pos = bank.positions()[i];
        const bool required = pos >= r_gt(0.0) && pos <= r_end;
        if (!required) continue;
        any_required = true;
        if (!report.offsets[i] || *report.offsets[i] > scenario.success_rule.max_offset)
            switching_ok = false;
        const bool passed = r_end > pos + scenario.controller.lag_margin;
        if (scenario.success_rule.require_reset && passed && bank.is_on(i))
            resets_ok = false;
    }

    if (!any_required) {
        report.success = true; // nothing to light: vacuously successful
    } else if (switching_ok && resets_ok) {
        report.success = true;
    } else {
        report.success = false;
        if (!tracker.saw_object())
            report.failure_reason = FailureReason::NoDetection;
        else if (!switching_ok && tracker.track().v_history.empty())
            report.failure_reason = FailureReason::NoSpeed;
        else if (!switching_ok)
            report.failure_reason = FailureReason::LateSwitch;
        else
            report.failure_reason = FailureReason::MissingReset;
    }
    return report;
}

std::vector<TrialReport> run_trials(const Scenario& scenario, int jobs) {
    if (scenario.trials < 1) throw std::invalid_argument("a batch needs at least one trial");
    std::vector<TrialReport> reports(static_cast<std::size_t>(scenario.trials));

    const int workers = std::max(1, std::min(jobs, scenario.trials));
    if (workers == 1) {
        for (int i = 0; i < scenario.trials; ++i)
            reports[static_cast<std::size_t>(i)] = run_trial(scenario, i);
        return reports;
    }

    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < scenario.trials; i = next.fetch_add(1))
                reports[static_cast<std::size_t>(i)] = run_trial(scenario, i);
        });
    for (auto& t : pool) t.join();
    return reports;
}

BatchSummary summarize(const Scenario& scenario, const std::vector<TrialReport>& reports) {
    BatchSummary summary;
    summary.v_true = scenario.scene.true_speed;
    summary.blur_fraction = scenario.scene.blur_fraction;
    summary.trials = static_cast<int>(reports.size());

    double v_sum = 0.0;
    double delta_sum = 0.0;
    int v_count = 0;
    int delta_count = 0;
    // Offset classification tolerance: one frame of travel is the smallest
    // observable timing difference.
    const double near_tol = scenario.scene.true_speed * scenario.calibration.frame_interval;
    int near = 0, before = 0, after = 0;

    for (const auto& report : reports) {
        if (report.success) {
            ++summary.successes;
            if (report.v_arls) {
                v_sum += *report.v_arls;
                ++v_count;
            }
            if (report.delta_v_pct) {
                delta_sum += *report.delta_v_pct;
                ++delta_count;
            }
        } else if (report.failure_reason) {
            ++summary.failure_counts[static_cast<std::size_t>(*report.failure_reason)];
        }
        for (const auto& offset : report.offsets) {
            if (!offset) continue;
            if (std::abs(*offset) <= near_tol)
                ++near;
            else if (*offset < 0.0)
                ++before;
            else
                ++after;
        }
    }

    summary.performance_pct =
        100.0 * static_cast<double>(summary.successes) / static_cast<double>(summary.trials);
    if (v_count > 0) summary.mean_v_arls = v_sum / v_count;
    if (delta_count > 0) summary.mean_delta_v_pct = delta_sum / delta_count;

    if (near + before + after == 0)
        summary.offset_class = "n/a";
    else if (near >= before && near >= after)
        summary.offset_class = "~0";
    else if (before >= after)
        summary.offset_class = "<0";
    else
        summary.offset_class = ">0";
    return summary;
}

BatchSummary run_batch(const Scenario& scenario, int jobs) {
    return summarize(scenario, run_trials(scenario, jobs));
}

std::vector<BatchSummary> sweep(const Scenario& base, const std::vector<double>& speeds,
                                const std::vector<double>& blur_levels, bool paired, int jobs) {
    if (speeds.empty()) throw std::invalid_argument("sweep needs at least one speed");
    if (blur_levels.empty()) throw std::invalid_argument("sweep needs at least one blur level");
    if (paired && speeds.size() != blur_levels.size())
        throw std::invalid_argument("paired sweep needs equal-length lists");

    std::vector<BatchSummary> rows;
    const auto run_cell = [&](double speed_value, double blur_value) {
        Scenario cell = base;
        cell.scene.true_speed = speed_value;
        cell.scene.blur_fraction = blur_value;
        rows.push_back(run_batch(cell, jobs));
    };

    if (paired) {
        for (std::size_t i = 0; i < speeds.size(); ++i) run_cell(speeds[i], blur_levels[i]);
    } else {
        for (double speed_value : speeds)
            for (double blur_value : blur_levels) run_cell(speed_value, blur_value);
    }
    return rows;
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string report_csv(const std::vector<BatchSummary>& rows) {
    std::string csv = "v_true,v_arls,delta_v_pct,blur_pct,offset_class,performance_pct\n";
    for (const auto& row : rows) {
        csv += format_number(row.v_true);
        csv += ',';
        if (row.mean_v_arls) csv += format_number(*row.mean_v_arls);
        csv += ',';
        if (row.mean_delta_v_pct) csv += format_number(*row.mean_delta_v_pct);
        csv += ',';
        csv += format_number(row.blur_fraction * 100.0);
        csv += ',';
        csv += row.offset_class;
        csv += ',';
        csv += format_number(row.performance_pct);
        csv += '\n';
    }
    return csv;
}

} // namespace arls
