#include "arls/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arls/config.hpp"
#include "arls/harness.hpp"
#include "arls/pgm.hpp"

namespace arls {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitEmptyTrack = 2;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
    sub->add_option("--config", opts.config_path, "key = value config file")
        ->envname("ARLS_CONFIG");
    sub->add_option("--seed", opts.seed, "base random seed");
    sub->add_option("--jobs", opts.jobs, "worker threads for trial batches");
    sub->add_option("--set", opts.overrides, "override any config key (key=value)");
}

RunConfig load_config(const CommonOptions& opts) {
    RunConfig config = RunConfig::defaults();
    if (!opts.config_path.empty()) config.apply_file(opts.config_path);
    for (const auto& kv : opts.overrides) config.apply_line(kv);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.jobs) config.jobs = *opts.jobs;
    return config;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("short write to " + path.string());
}

std::string format_optional(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string("n/a");
}

int cmd_render(const RunConfig& config, const std::string& out_dir,
               std::optional<int> frame_override, std::ostream& out) {
    config.scene.validate();
    if (!fs::is_directory(out_dir))
        throw std::runtime_error("output directory does not exist: " + out_dir);

    int frames = config.scene.frame_count();
    if (frame_override) {
        if (*frame_override < 1) throw std::runtime_error("--frames must be >= 1");
        frames = *frame_override;
        if (config.scene.true_speed > 0.0) frames = std::min(frames, config.scene.frame_count());
    } else if (config.scene.true_speed <= 0.0) {
        // Stationary scenes have no natural traverse length.
        frames = static_cast<int>(std::llround(config.scene.frame_rate));
    }

    for (int k = 0; k < frames; ++k) {
        Frame frame = render_scene(config.scene, static_cast<double>(k) / config.scene.frame_rate);
        frame.index = k;
        save_frame_file(frame, fs::path(out_dir) / sequence_file_name(k));
    }
    out << "wrote " << frames << " frames to " << out_dir << "\n";
    return kExitOk;
}

int cmd_track(const RunConfig& config, const std::string& frames_dir,
              const std::string& background_path, std::ostream& out) {
    const auto files = list_sequence(frames_dir);
    if (files.empty()) throw std::runtime_error("no frame_*.pgm files in " + frames_dir);

    // The lowest-numbered frame doubles as the reference background unless
    // one is given explicitly.
    Frame reference = background_path.empty() ? load_frame_file(files.front().second)
                                              : load_frame_file(background_path);
    const Calibration cal = config.to_calibration();
    const double gate = resolve_quality_gate(config.detection, config.scene);
    Tracker tracker(std::move(reference), cal, config.detection, gate);

    for (const auto& [index, path] : files) {
        Frame frame = load_frame_file(path);
        frame.index = index;
        const auto step = tracker.step(frame);
        out << "frame " << index << ": ";
        if (step.detection.has_object()) {
            const auto& c = *step.detection.centroid;
            out << "area=" << step.detection.area << " centroid=(" << format_number(c.x) << ","
                << format_number(c.y) << ") r=" << format_number(*tracker.track().r)
                << " v=" << format_optional(tracker.track().v) << "\n";
        } else if (step.quality_rejected) {
            out << "skipped (low image quality)\n";
        } else if (step.edge_clipped) {
            out << "skipped (object clipped at frame edge)\n";
        } else if (step.demoted_small) {
            out << "no detection (below min_area)\n";
        } else {
            out << "no detection\n";
        }
    }

    if (!tracker.saw_object()) {
        out << "track: no object detected\n";
        return kExitEmptyTrack;
    }
    const auto& track = tracker.track();
    out << "track: v_mean=" << format_optional(track.v_mean) << " m/s over "
        << track.v_history.size() << " samples, final r=" << format_optional(track.r) << " m\n";
    return kExitOk;
}

int cmd_simulate(const RunConfig& config, const std::string& out_path,
                 const std::string& events_dir, std::ostream& out) {
    const Scenario scenario = config.to_scenario();
    const auto reports = run_trials(scenario, config.jobs);
    const BatchSummary summary = summarize(scenario, reports);

    write_text_file(out_path, report_csv({summary}));

    if (!events_dir.empty()) {
        if (!fs::is_directory(events_dir))
            throw std::runtime_error("events directory does not exist: " + events_dir);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            char name[48];
            std::snprintf(name, sizeof name, "events_trial_%04zu.csv", i);
            write_text_file(fs::path(events_dir) / name, events_to_csv(reports[i].events));
        }
    }

    out << "trials: " << summary.trials << "\n";
    out << "performance_pct: " << format_number(summary.performance_pct) << "\n";
    out << "v_arls_mean: " << format_optional(summary.mean_v_arls) << "\n";
    out << "delta_v_pct_mean: " << format_optional(summary.mean_delta_v_pct) << "\n";
    out << "offset_class: " << summary.offset_class << "\n";
    for (int r = 0; r < 4; ++r)
        if (summary.failure_counts[static_cast<std::size_t>(r)] > 0)
            out << "failures[" << failure_reason_name(static_cast<FailureReason>(r))
                << "]: " << summary.failure_counts[static_cast<std::size_t>(r)] << "\n";
    out << "report: " << out_path << "\n";
    return kExitOk;
}

int cmd_bench(const RunConfig& config, const std::vector<double>& speeds,
              const std::vector<double>& blurs, bool paired, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
    const Scenario base = config.to_scenario();
    if (speeds.empty() || blurs.empty())
        throw CLI::ValidationError("bench", "--speeds and --blurs must be nonempty");
    if (paired && speeds.size() != blurs.size())
        throw CLI::ValidationError("bench", "--pair needs equal-length lists");

    std::vector<BatchSummary> rows;
    const auto run_cell = [&](double speed_value, double blur_value) {
        Scenario cell = base;
        cell.scene.true_speed = speed_value;
        cell.scene.blur_fraction = blur_value;
        const auto start = std::chrono::steady_clock::now();
        rows.push_back(run_batch(cell, config.jobs));
        const auto elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - start);
        // Wall clock goes to stderr so the CSV stays byte-reproducible.
        err << "cell v=" << format_number(speed_value) << " blur=" << format_number(blur_value)
            << ": " << format_number(elapsed.count()) << " s\n";
    };
    if (paired) {
        for (std::size_t i = 0; i < speeds.size(); ++i) run_cell(speeds[i], blurs[i]);
    } else {
        for (double s : speeds)
            for (double b : blurs) run_cell(s, b);
    }

    write_text_file(out_path, report_csv(rows));
    out << "wrote " << rows.size() << " rows to " << out_path << "\n";
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"road lighting simulator: frame differencing, speed tracking, lamp control"};
    app.require_subcommand(1);

    CommonOptions render_opts, track_opts, sim_opts, bench_opts;

    auto* render = app.add_subcommand("render", "render a synthetic traverse as PGM frames");
    add_common(render, render_opts);
    std::string render_out;
    std::optional<int> render_frames;
    render->add_option("--out", render_out, "output directory")->required();
    render->add_option("--frames", render_frames, "frame count override");

    auto* track = app.add_subcommand("track", "track an object through a PGM sequence");
    add_common(track, track_opts);
    std::string frames_dir, background_path;
    track->add_option("frames_dir", frames_dir, "directory of frame_*.pgm files")->required();
    track->add_option("--background", background_path, "explicit reference background image");

    auto* simulate = app.add_subcommand("simulate", "run a seeded batch of traverse trials");
    add_common(simulate, sim_opts);
    std::string sim_out = "arls_report.csv";
    std::string events_dir;
    simulate->add_option("--out", sim_out, "report CSV path");
    simulate->add_option("--dump-events", events_dir, "directory for per-trial event CSVs");

    auto* bench = app.add_subcommand("bench", "sweep speeds and blur levels into a CSV table");
    add_common(bench, bench_opts);
    std::vector<double> speeds, blurs;
    std::string bench_out = "arls_bench.csv";
    bool paired = false;
    bench->add_option("--speeds", speeds, "speeds to sweep, m/s")
        ->required()
        ->delimiter(',');
    bench->add_option("--blurs", blurs, "blur fractions to sweep")->required()->delimiter(',');
    bench->add_flag("--pair", paired, "zip the lists instead of the full grid");
    bench->add_option("--out", bench_out, "sweep CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (render->parsed())
            return cmd_render(load_config(render_opts), render_out, render_frames, out);
        if (track->parsed())
            return cmd_track(load_config(track_opts), frames_dir, background_path, out);
        if (simulate->parsed())
            return cmd_simulate(load_config(sim_opts), sim_out, events_dir, out);
        if (bench->parsed())
            return cmd_bench(load_config(bench_opts), speeds, blurs, paired, bench_out, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace arls
