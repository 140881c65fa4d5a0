#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace arls {

/// Grayscale frame: row-major intensities in [0, 255] plus a sequence index.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
    std::int64_t index = 0;

    Frame() = default;

    Frame(int w, int h, std::uint8_t fill = 0, std::int64_t idx = 0)
        : width(w), height(h), index(idx) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("frame dimensions must be positive");
        pixels.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
    }

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    bool same_shape(const Frame& other) const {
        return width == other.width && height == other.height;
    }

    bool operator==(const Frame& other) const {
        return width == other.width && height == other.height && pixels == other.pixels;
    }
};

} // namespace arls
