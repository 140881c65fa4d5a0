#include "arls/kinematics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arls {

Calibration calibrate(double reference_length_m, double reference_length_px,
                      double frame_rate, double segment_length, double camera_height) {
    if (reference_length_m <= 0.0 || reference_length_px <= 0.0 || frame_rate <= 0.0 ||
        segment_length <= 0.0 || camera_height <= 0.0)
        throw std::invalid_argument("calibration inputs must be positive");

    Calibration cal;
    cal.c = reference_length_m / reference_length_px;
    cal.frame_rate = frame_rate;
    cal.frame_interval = 1.0 / frame_rate;
    cal.segment_length = segment_length;
    cal.camera_height = camera_height;
    return cal;
}

double displacement(const Detection& d1, const Detection& d2, const Calibration& cal) {
    if (!d1.has_object() || !d2.has_object())
        throw std::invalid_argument("displacement needs two real detections");
    if (d2.frame_index <= d1.frame_index)
        throw std::invalid_argument("displacement needs increasing frame indices");
    return cal.c * std::hypot(d2.centroid->x - d1.centroid->x,
                              d2.centroid->y - d1.centroid->y);
}

double speed(double delta_r, std::int64_t n_frames, const Calibration& cal) {
    if (n_frames < 1) throw std::invalid_argument("speed needs at least one frame interval");
    if (delta_r < 0.0) throw std::invalid_argument("displacement must be >= 0");
    return delta_r / (static_cast<double>(n_frames) * cal.frame_interval);
}

TrackState update_track(TrackState state, const Detection& d, const Calibration& cal) {
    if (d.frame_index <= state.last_frame_index)
        throw std::invalid_argument("track updates need strictly increasing frame indices");
    state.last_frame_index = d.frame_index;
    if (!d.has_object()) return state; // widens the gap for the next sample

    if (state.previous) {
        const std::int64_t gap = d.frame_index - state.previous->frame_index;
        const double dr = displacement(*state.previous, d, cal);
        const double sample = speed(dr, gap, cal);
        state.v = sample;
        state.v_history.push_back(sample);
        state.v_mean = std::accumulate(state.v_history.begin(), state.v_history.end(), 0.0) /
                       static_cast<double>(state.v_history.size());
    }
    state.r = cal.c * d.centroid->x;
    state.previous = d;
    return state;
}

} // namespace arls
