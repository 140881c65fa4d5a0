#pragma once

#include <cstdint>

#include "arls/frame.hpp"

namespace arls {

/// Synthetic scene: a rectangular vehicle moving left-to-right at constant
/// speed over a uniform road segment seen from directly above.
///
/// The segment spans `resolution` pixels over `segment_length` meters; the
/// frame height is derived as twice the vehicle width so the vehicle sits
/// vertically centered with road margin on both sides.
struct SceneConfig {
    double segment_length = 1.0;    // meters
    int resolution = 400;           // pixels spanning segment_length
    double vehicle_length = 0.13;   // meters, along the motion axis
    double vehicle_width = 0.093;   // meters, across the motion axis
    int vehicle_intensity = 200;
    int background_intensity = 50;
    double true_speed = 0.93;       // m/s
    double blur_fraction = 0.0;     // fraction of frames that get blurred
    int blur_radius = 2;            // pixels (Chebyshev)
    int noise_amplitude = 0;        // intensity units
    double frame_rate = 25.0;       // frames per second

    double meters_per_pixel() const { return segment_length / resolution; }
    int frame_width() const { return resolution; }
    int frame_height() const;

    /// Time for the leading edge to travel the full segment. +inf when the
    /// vehicle is stationary.
    double traverse_time() const;

    /// Frames for one traverse sampled at frame_rate starting at t = 0,
    /// endpoint included. Stationary scenes default to one second of frames.
    int frame_count() const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Renders the frame at time t. The vehicle occupies the world rectangle
/// [v*t - vehicle_length, v*t) along the motion axis -- its leading edge
/// sits at road position r(t) = v*t -- and a pixel belongs to the vehicle
/// iff its center lies inside that rectangle. Throws std::out_of_range when
/// t is outside [0, traverse_time()].
Frame render_scene(const SceneConfig& config, double t);

/// Uniform background frame of the scene's dimensions (the reference image).
Frame background_frame(const SceneConfig& config);

/// Box blur: every output pixel is the rounded mean of the input pixels
/// within Chebyshev distance `radius`, window clamped at the frame edges.
/// Radius 0 is the identity. Rounding is half-up in exact integer
/// arithmetic.
Frame apply_blur(const Frame& frame, int radius);

/// Perturbs each pixel by a deterministic pseudo-random offset uniform in
/// [-amplitude, +amplitude], clamped to [0, 255]. One Lcg stream seeded with
/// `seed` is consumed in row-major pixel order, one draw per pixel.
Frame apply_noise(const Frame& frame, int amplitude, std::uint64_t seed);

/// Blur schedule: frame k is blurred iff floor((k+1)*f) > floor(k*f), which
/// spreads ceil(f*n) blurred frames evenly over any n-frame sequence
/// (f = 0.25 blurs every 4th frame).
bool blur_scheduled(double blur_fraction, std::int64_t frame_index);

} // namespace arls
