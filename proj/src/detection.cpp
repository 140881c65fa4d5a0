#include "arls/detection.hpp"

#include <cstdlib>
#include <stdexcept>

namespace arls {

ForegroundMask subtract(const Frame& current, const Frame& reference, int threshold) {
    if (!current.same_shape(reference))
        throw std::invalid_argument("frame dimensions differ in subtraction");

    ForegroundMask mask;
    mask.width = current.width;
    mask.height = current.height;
    mask.frame_index = current.index;
    mask.cells.resize(current.pixels.size());
    for (std::size_t i = 0; i < current.pixels.size(); ++i) {
        const int diff = std::abs(static_cast<int>(current.pixels[i]) -
                                  static_cast<int>(reference.pixels[i]));
        mask.cells[i] = static_cast<std::uint8_t>(ceila(diff > threshold ? diff : 0));
    }
    return mask;
}

Detection centroid(const ForegroundMask& mask) {
    // One raster scan; integer sums keep the mean exact w.r.t. any
    // re-summation of the same cells.
    std::int64_t count = 0;
    std::int64_t sum_x = 0;
    std::int64_t sum_y = 0;
    std::size_t i = 0;
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x, ++i) {
            if (mask.cells[i]) {
                ++count;
                sum_x += x;
                sum_y += y;
            }
        }
    }

    Detection d;
    d.frame_index = mask.frame_index;
    d.area = count;
    if (count > 0)
        d.centroid = PixelPoint{static_cast<double>(sum_x) / static_cast<double>(count),
                                static_cast<double>(sum_y) / static_cast<double>(count)};
    return d;
}

Detection detect(const Frame& current, const Frame& reference, int threshold,
                 std::int64_t min_area) {
    Detection d = centroid(subtract(current, reference, threshold));
    if (d.area < min_area) return Detection{d.frame_index, 0, std::nullopt};
    return d;
}

bool touches_motion_edges(const ForegroundMask& mask) {
    if (mask.width == 0) return false;
    for (int y = 0; y < mask.height; ++y)
        if (mask.at(0, y) || mask.at(mask.width - 1, y)) return true;
    return false;
}

Frame mask_to_frame(const ForegroundMask& mask) {
    Frame frame(mask.width, mask.height, 0, mask.frame_index);
    for (std::size_t i = 0; i < mask.cells.size(); ++i)
        frame.pixels[i] = mask.cells[i] ? 255 : 0;
    return frame;
}

} // namespace arls
