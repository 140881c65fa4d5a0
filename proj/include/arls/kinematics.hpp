#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arls/detection.hpp"

namespace arls {

/// Pixel-to-world calibration plus frame timing.
struct Calibration {
    double c = 0.0;              // meters per pixel
    double frame_rate = 0.0;     // frames per second
    double frame_interval = 0.0; // seconds, = 1 / frame_rate
    double segment_length = 0.0; // meters
    double camera_height = 0.0;  // meters, informational
};

/// c = reference_length_m / reference_length_px, frame_interval = 1/fps.
/// All inputs must be positive.
Calibration calibrate(double reference_length_m, double reference_length_px,
                      double frame_rate, double segment_length, double camera_height);

struct WorldPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Uniform scaling from image to world coordinates: (x, y) = c * (X, Y).
inline WorldPoint pixels_to_meters(const Calibration& cal, double px_x, double px_y) {
    return {cal.c * px_x, cal.c * px_y};
}

/// Track of a single object along the segment. Updated functionally:
/// update_track returns the successor state.
struct TrackState {
    std::optional<Detection> previous;  // last real detection consumed
    std::optional<double> r;            // road position, meters
    std::optional<double> v;            // latest speed sample, m/s
    std::vector<double> v_history;      // all speed samples this traverse
    std::optional<double> v_mean;       // running mean of v_history
    std::int64_t last_frame_index = -1; // newest index consumed, incl. no-detections

    bool has_position() const { return r.has_value(); }
};

/// Euclidean displacement in meters between two detections' centroids,
/// valid for diagonal motion. Both must be real detections in increasing
/// frame order.
double displacement(const Detection& d1, const Detection& d2, const Calibration& cal);

/// v = delta_r / (n_frames * frame_interval). n_frames >= 1.
double speed(double delta_r, std::int64_t n_frames, const Calibration& cal);

/// Linear extrapolation: r(t + dt') = r(t) + v * dt'.
inline double predict(double r, double v, double dt_prime) { return r + v * dt_prime; }

/// Consumes one detection (real or empty) with a strictly increasing frame
/// index. A real detection after a previous one appends a speed sample over
/// the actual frame gap; an empty detection only widens the gap for the
/// next sample.
TrackState update_track(TrackState state, const Detection& d, const Calibration& cal);

} // namespace arls
