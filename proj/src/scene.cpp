#include "arls/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arls/rng.hpp"

namespace arls {

namespace {

// First pixel whose center (i + 0.5) * mpp lies at or above `lo`, and one
// past the last whose center lies strictly below `hi`: [lo, hi) half-open in
// world units.
std::pair<int, int> covered_range(double lo, double hi, double mpp, int count) {
    int first = static_cast<int>(std::ceil(lo / mpp - 0.5));
    int last = static_cast<int>(std::ceil(hi / mpp - 0.5)) - 1;
    first = std::max(first, 0);
    last = std::min(last, count - 1);
    return {first, last};
}

} // namespace

int SceneConfig::frame_height() const {
    const int h = static_cast<int>(std::llround(2.0 * vehicle_width / meters_per_pixel()));
    return std::max(h, 1);
}

double SceneConfig::traverse_time() const {
    if (true_speed <= 0.0) return std::numeric_limits<double>::infinity();
    return segment_length / true_speed;
}

int SceneConfig::frame_count() const {
    if (true_speed <= 0.0) return std::max(1, static_cast<int>(std::llround(frame_rate)));
    return static_cast<int>(std::floor(traverse_time() * frame_rate)) + 1;
}

void SceneConfig::validate() const {
    if (segment_length <= 0.0) throw std::invalid_argument("segment_length must be > 0");
    if (resolution <= 0) throw std::invalid_argument("resolution must be > 0");
    if (vehicle_length <= 0.0) throw std::invalid_argument("vehicle_length must be > 0");
    if (vehicle_width <= 0.0) throw std::invalid_argument("vehicle_width must be > 0");
    if (vehicle_length > segment_length)
        throw std::invalid_argument("vehicle_length must fit within segment_length");
    if (vehicle_intensity < 0 || vehicle_intensity > 255)
        throw std::invalid_argument("vehicle_intensity must be in [0, 255]");
    if (background_intensity < 0 || background_intensity > 255)
        throw std::invalid_argument("background_intensity must be in [0, 255]");
    if (true_speed < 0.0) throw std::invalid_argument("true_speed must be >= 0");
    if (frame_rate <= 0.0) throw std::invalid_argument("frame_rate must be > 0");
    if (blur_fraction < 0.0 || blur_fraction > 1.0)
        throw std::invalid_argument("blur_fraction must be in [0, 1]");
    if (blur_radius < 0) throw std::invalid_argument("blur_radius must be >= 0");
    if (noise_amplitude < 0) throw std::invalid_argument("noise_amplitude must be >= 0");
    if (std::abs(vehicle_intensity - background_intensity) <= 2 * noise_amplitude)
        throw std::invalid_argument(
            "noise_amplitude too large: |vehicle_intensity - background_intensity| "
            "must exceed twice the noise amplitude");
}

Frame background_frame(const SceneConfig& config) {
    return Frame(config.frame_width(), config.frame_height(),
                 static_cast<std::uint8_t>(config.background_intensity));
}

Frame render_scene(const SceneConfig& config, double t) {
    if (t < 0.0) throw std::out_of_range("render time must be >= 0");
    if (config.true_speed > 0.0) {
        const double horizon = config.traverse_time();
        if (t > horizon * (1.0 + 1e-9) + 1e-12)
            throw std::out_of_range("render time past the end of the traverse");
    }

    Frame frame = background_frame(config);
    const double mpp = config.meters_per_pixel();
    const double leading_edge = config.true_speed * t;
    const double x_lo = leading_edge - config.vehicle_length;
    const double road_height = frame.height * mpp;
    const double y_lo = (road_height - config.vehicle_width) / 2.0;
    const double y_hi = y_lo + config.vehicle_width;

    const auto [x0, x1] = covered_range(x_lo, leading_edge, mpp, frame.width);
    const auto [y0, y1] = covered_range(y_lo, y_hi, mpp, frame.height);
    const auto value = static_cast<std::uint8_t>(config.vehicle_intensity);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) frame.at(x, y) = value;
    return frame;
}

Frame apply_blur(const Frame& frame, int radius) {
    if (radius < 0) throw std::invalid_argument("blur radius must be >= 0");
    if (radius == 0) return frame;

    const int w = frame.width;
    const int h = frame.height;
    // Summed-area table over (w+1) x (h+1) so any clamped window sum is four
    // lookups; keeps the rounded mean exact.
    std::vector<std::int64_t> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0);
    const auto sat_at = [&](int x, int y) -> std::int64_t& {
        return sat[static_cast<std::size_t>(y) * (w + 1) + x];
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            sat_at(x + 1, y + 1) =
                frame.at(x, y) + sat_at(x, y + 1) + sat_at(x + 1, y) - sat_at(x, y);

    Frame out = frame;
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(y - radius, 0);
        const int y1 = std::min(y + radius, h - 1);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(x - radius, 0);
            const int x1 = std::min(x + radius, w - 1);
            const std::int64_t sum = sat_at(x1 + 1, y1 + 1) - sat_at(x0, y1 + 1) -
                                     sat_at(x1 + 1, y0) + sat_at(x0, y0);
            const std::int64_t count = static_cast<std::int64_t>(x1 - x0 + 1) * (y1 - y0 + 1);
            // Round half up without leaving integer arithmetic.
            out.at(x, y) = static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
        }
    }
    return out;
}

Frame apply_noise(const Frame& frame, int amplitude, std::uint64_t seed) {
    if (amplitude < 0) throw std::invalid_argument("noise amplitude must be >= 0");
    if (amplitude == 0) return frame;

    Frame out = frame;
    Lcg rng(seed);
    for (auto& px : out.pixels) {
        const int value = static_cast<int>(px) + rng.next_offset(amplitude);
        px = static_cast<std::uint8_t>(std::clamp(value, 0, 255));
    }
    return out;
}

bool blur_scheduled(double blur_fraction, std::int64_t frame_index) {
    if (blur_fraction <= 0.0) return false;
    if (blur_fraction >= 1.0) return true;
    const double before = std::floor(static_cast<double>(frame_index) * blur_fraction);
    const double after = std::floor(static_cast<double>(frame_index + 1) * blur_fraction);
    return after > before;
}

} // namespace arls
