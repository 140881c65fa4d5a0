#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arls/detection.hpp"
#include "arls/scene.hpp"

using namespace arls;

namespace {

ForegroundMask make_mask(int w, int h) {
    ForegroundMask mask;
    mask.width = w;
    mask.height = h;
    mask.cells.assign(static_cast<std::size_t>(w) * h, 0);
    return mask;
}

// Independent oracle: collect every 1-cell, then average with the same
// integer-sum arithmetic the scan is required to match bit-for-bit.
struct OracleResult {
    std::int64_t area = 0;
    double x = 0.0;
    double y = 0.0;
};

OracleResult brute_force_centroid(const ForegroundMask& mask) {
    std::vector<std::pair<int, int>> cells;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) cells.emplace_back(x, y);
    OracleResult result;
    result.area = static_cast<std::int64_t>(cells.size());
    if (cells.empty()) return result;
    std::int64_t sx = 0, sy = 0;
    for (const auto& [x, y] : cells) {
        sx += x;
        sy += y;
    }
    result.x = static_cast<double>(sx) / static_cast<double>(result.area);
    result.y = static_cast<double>(sy) / static_cast<double>(result.area);
    return result;
}

ForegroundMask random_mask(std::mt19937_64& rng, int max_side = 64) {
    const int w = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_side));
    const int h = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_side));
    ForegroundMask mask = make_mask(w, h);
    const unsigned density = 1 + rng() % 9; // fill roughly 10%..90%
    for (auto& cell : mask.cells) cell = (rng() % 10 < density) ? 1 : 0;
    return mask;
}

} // namespace

TEST_CASE("ceila maps zero to zero and everything else to one") {
    CHECK(ceila(0.0) == 0);
    CHECK(ceila(-17.0) == 1);
    CHECK(ceila(0.0001) == 1);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const double x = (static_cast<double>(rng()) / 1e18) - 4.0;
        CHECK(ceila(x) == ceila(-x));
        CHECK(ceila(static_cast<double>(ceila(x))) == ceila(x));
    }
}

TEST_CASE("subtracting a frame from itself yields the empty mask") {
    Frame frame(6, 4, 90);
    frame.index = 17;
    const ForegroundMask mask = subtract(frame, frame, 0);
    CHECK(mask.frame_index == 17);
    for (auto cell : mask.cells) CHECK(cell == 0);
    CHECK_FALSE(centroid(mask).has_object());
}

TEST_CASE("a single differing pixel sets exactly one cell") {
    const Frame reference(5, 5, 10);
    Frame current = reference;
    current.at(3, 2) = 210;
    const ForegroundMask mask = subtract(current, reference, 0);
    std::int64_t set = 0;
    for (auto cell : mask.cells) set += cell;
    CHECK(set == 1);
    CHECK(mask.at(3, 2) == 1);
}

TEST_CASE("threshold keeps small differences out of the mask") {
    Frame reference(3, 1, 100);
    Frame current = reference;
    current.pixels = {100, 103, 110}; // differences 0, 3, 10
    const ForegroundMask mask = subtract(current, reference, 5);
    CHECK(mask.cells == std::vector<std::uint8_t>{0, 0, 1});
}

TEST_CASE("subtraction is symmetric and rejects mismatched dimensions") {
    std::mt19937_64 rng(6);
    Frame a(8, 3), b(8, 3);
    for (auto& px : a.pixels) px = static_cast<std::uint8_t>(rng() % 256);
    for (auto& px : b.pixels) px = static_cast<std::uint8_t>(rng() % 256);
    CHECK(subtract(a, b, 7).cells == subtract(b, a, 7).cells);
    CHECK_THROWS_AS(subtract(a, Frame(3, 8), 0), std::invalid_argument);
}

TEST_CASE("a filled 10x5 block has area 50 and centroid (5.5, 3.0) one-based") {
    ForegroundMask mask = make_mask(12, 7);
    for (int y = 0; y <= 4; ++y)
        for (int x = 0; x <= 9; ++x) mask.at(x, y) = 1;

    const Detection d = centroid(mask);
    CHECK(d.area == 50);
    REQUIRE(d.has_object());
    // Zero-based scan coordinates; +1 converts to one-based scan units.
    CHECK(d.centroid->x == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(d.centroid->y == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.centroid->x + 1.0 == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(d.centroid->y + 1.0 == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("a single cell is its own centroid") {
    ForegroundMask mask = make_mask(10, 6);
    mask.at(7, 2) = 1;
    const Detection d = centroid(mask);
    CHECK(d.area == 1);
    CHECK(d.centroid->x == 7.0);
    CHECK(d.centroid->y == 2.0);
}

TEST_CASE("an empty mask is an explicit no-detection") {
    const Detection d = centroid(make_mask(4, 4));
    CHECK(d.area == 0);
    CHECK_FALSE(d.has_object());
    CHECK_FALSE(d.centroid.has_value());
}

TEST_CASE("scan centroid equals the brute-force oracle exactly") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 300; ++i) {
        const ForegroundMask mask = random_mask(rng);
        const Detection d = centroid(mask);
        const OracleResult oracle = brute_force_centroid(mask);
        CHECK(d.area == oracle.area);
        if (oracle.area > 0) {
            CHECK(d.centroid->x == oracle.x); // bit-identical, not approximate
            CHECK(d.centroid->y == oracle.y);
        }
    }
}

TEST_CASE("filled rectangles center at the midpoint of their extents") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        const int w = 8 + static_cast<int>(rng() % 40);
        const int h = 8 + static_cast<int>(rng() % 40);
        ForegroundMask mask = make_mask(w, h);
        const int x0 = static_cast<int>(rng() % (w / 2));
        const int y0 = static_cast<int>(rng() % (h / 2));
        const int x1 = x0 + 1 + static_cast<int>(rng() % (w - x0 - 1));
        const int y1 = y0 + 1 + static_cast<int>(rng() % (h - y0 - 1));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) mask.at(x, y) = 1;

        const Detection d = centroid(mask);
        CHECK(d.centroid->x == doctest::Approx((x0 + x1) / 2.0).epsilon(1e-12));
        CHECK(d.centroid->y == doctest::Approx((y0 + y1) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("translating the foreground translates the centroid") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 100; ++i) {
        ForegroundMask mask = make_mask(40, 40);
        for (int y = 5; y < 15; ++y)
            for (int x = 5; x < 15; ++x) mask.at(x, y) = (rng() % 2) ? 1 : 0;
        const Detection base = centroid(mask);
        if (!base.has_object()) continue;

        const int dx = static_cast<int>(rng() % 20);
        const int dy = static_cast<int>(rng() % 20);
        ForegroundMask moved = make_mask(40, 40);
        for (int y = 5; y < 15; ++y)
            for (int x = 5; x < 15; ++x)
                if (mask.at(x, y)) moved.at(x + dx, y + dy) = 1;

        const Detection shifted = centroid(moved);
        CHECK(shifted.area == base.area);
        CHECK(shifted.centroid->x == doctest::Approx(base.centroid->x + dx).epsilon(1e-12));
        CHECK(shifted.centroid->y == doctest::Approx(base.centroid->y + dy).epsilon(1e-12));
    }
}

TEST_CASE("detect finds the rendered rectangle center within half a pixel") {
    SceneConfig config;
    config.true_speed = 1.0;
    const double t = 0.5;
    const Frame frame = render_scene(config, t);
    const Frame reference = background_frame(config);

    const Detection d = detect(frame, reference, 10, 4);
    REQUIRE(d.has_object());

    const double mpp = config.meters_per_pixel();
    const double center_x_world = config.true_speed * t - config.vehicle_length / 2.0;
    const double center_x_px = center_x_world / mpp - 0.5;
    const double center_y_px = (config.frame_height() * mpp / 2.0) / mpp - 0.5;
    CHECK(std::abs(d.centroid->x - center_x_px) <= 0.5);
    CHECK(std::abs(d.centroid->y - center_y_px) <= 0.5);
}

TEST_CASE("detect treats the background against itself as no object") {
    SceneConfig config;
    const Frame reference = background_frame(config);
    CHECK_FALSE(detect(reference, reference, 0, 4).has_object());
}

TEST_CASE("detect demotes specks below the minimum area") {
    const Frame reference(20, 20, 40);
    Frame current = reference;
    current.at(3, 3) = 200;
    current.at(15, 11) = 200;
    const Detection d = detect(current, reference, 10, 5);
    CHECK(d.area == 0);
    CHECK_FALSE(d.has_object());
}

TEST_CASE("edge contact is detected on the motion-axis columns only") {
    ForegroundMask mask = make_mask(6, 4);
    CHECK_FALSE(touches_motion_edges(mask));
    mask.at(2, 1) = 1;
    CHECK_FALSE(touches_motion_edges(mask));
    mask.at(0, 3) = 1;
    CHECK(touches_motion_edges(mask));

    ForegroundMask right = make_mask(6, 4);
    right.at(5, 0) = 1;
    CHECK(touches_motion_edges(right));

    ForegroundMask vertical = make_mask(6, 4);
    vertical.at(3, 0) = 1; // top row is not a motion edge
    CHECK_FALSE(touches_motion_edges(vertical));
}

TEST_CASE("masks render to 0/255 frames for inspection") {
    ForegroundMask mask = make_mask(3, 2);
    mask.frame_index = 9;
    mask.at(1, 0) = 1;
    const Frame frame = mask_to_frame(mask);
    CHECK(frame.index == 9);
    CHECK(frame.at(1, 0) == 255);
    CHECK(frame.at(0, 0) == 0);
}
