#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arls/frame.hpp"

namespace arls {

/// Binary mask of moving-object pixels produced by frame differencing.
struct ForegroundMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells; // each exactly 0 or 1
    std::int64_t frame_index = 0;

    std::uint8_t at(int x, int y) const {
        return cells[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return cells[static_cast<std::size_t>(y) * width + x];
    }
};

struct PixelPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Result of one detection pass. `centroid` is absent when nothing was
/// found (area is then 0); a demoted detection is indistinguishable from an
/// empty one by design.
struct Detection {
    std::int64_t frame_index = 0;
    std::int64_t area = 0;
    std::optional<PixelPoint> centroid;

    bool has_object() const { return centroid.has_value(); }
};

/// "Ceil of absolute": 0 maps to 0, everything else to 1.
inline int ceila(double x) { return x == 0.0 ? 0 : 1; }

/// Differences `current` against `reference`: a cell is 1 iff the absolute
/// intensity difference exceeds `threshold`. Threshold 0 marks any
/// difference. The mask inherits current.index. Throws on dimension
/// mismatch.
ForegroundMask subtract(const Frame& current, const Frame& reference, int threshold);

/// Area and center of mass of the 1-cells, accumulated in one raster scan
/// with exact integer sums. An empty mask yields the no-detection state.
Detection centroid(const ForegroundMask& mask);

/// subtract + centroid, with detections smaller than min_area demoted to
/// no-detection.
Detection detect(const Frame& current, const Frame& reference, int threshold,
                 std::int64_t min_area);

/// True if any foreground cell lies in the first or last column. Objects
/// clipped by the frame boundary along the motion axis have biased
/// centroids; the tracking pipeline skips such frames.
bool touches_motion_edges(const ForegroundMask& mask);

/// Mask rendered as a {0, 255} frame for visual inspection (debug output).
Frame mask_to_frame(const ForegroundMask& mask);

} // namespace arls
