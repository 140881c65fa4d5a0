#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arls/controller.hpp"

using namespace arls;

namespace {

TrackState track_at(double r, std::optional<double> v_mean) {
    TrackState track;
    track.r = r;
    track.v_mean = v_mean;
    if (v_mean) {
        track.v = v_mean;
        track.v_history.push_back(*v_mean);
    }
    return track;
}

ControllerConfig config_with(double lead, double lag, double latency = 0.0,
                             double fallback = 2.5) {
    ControllerConfig config;
    config.lead_time = lead;
    config.lag_margin = lag;
    config.processing_latency = latency;
    config.v_fallback = fallback;
    return config;
}

} // namespace

TEST_CASE("trigger latches a lamp on, idempotently") {
    LampBank bank = LampBank::evenly_spaced(1.0);
    CHECK_FALSE(bank.is_on(2));
    bank.trigger(2, 4);
    CHECK(bank.is_on(2));
    bank.trigger(2, 5); // recorded, but already on
    CHECK(bank.is_on(2));
    CHECK(bank.events().size() == 2);
    CHECK_THROWS_AS(bank.trigger(8, 0), std::out_of_range);
}

TEST_CASE("reset latches a lamp off, idempotently") {
    LampBank bank = LampBank::evenly_spaced(1.0);
    bank.reset(1, 0);
    CHECK_FALSE(bank.is_on(1));
    bank.trigger(1, 1);
    bank.reset(1, 2); // reset dominates later in time
    CHECK_FALSE(bank.is_on(1));
    CHECK(bank.events().size() == 3);
    CHECK_THROWS_AS(bank.reset(-1, 0), std::out_of_range);
}

TEST_CASE("the port register mirrors the latch states") {
    LampBank bank = LampBank::evenly_spaced(1.0);
    CHECK(bank.port_register() == 0x00);
    bank.trigger(0, 0);
    bank.trigger(3, 0);
    CHECK(bank.port_register() == 0x09);
    for (int i = 0; i < LampBank::kLampCount; ++i) bank.trigger(i, 1);
    CHECK(bank.port_register() == 0xFF);
}

TEST_CASE("replaying the event log reproduces the register") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 50; ++round) {
        LampBank bank = LampBank::evenly_spaced(1.0);
        const int steps = 1 + static_cast<int>(rng() % 40);
        for (int s = 0; s < steps; ++s) {
            const int lamp = static_cast<int>(rng() % LampBank::kLampCount);
            if (rng() % 2)
                bank.trigger(lamp, s);
            else
                bank.reset(lamp, s);
        }
        CHECK(LampBank::replay_register(bank.events()) == bank.port_register());
    }
}

TEST_CASE("lamp positions must be increasing and inside the segment") {
    auto positions = LampBank::even_positions(1.0);
    CHECK(positions[0] == doctest::Approx(0.125));
    CHECK(positions[7] == doctest::Approx(1.0));

    positions[3] = positions[2];
    CHECK_THROWS_AS(LampBank(positions, 1.0), std::invalid_argument);
    positions = LampBank::even_positions(1.0);
    positions[7] = 1.5;
    CHECK_THROWS_AS(LampBank(positions, 1.0), std::invalid_argument);
}

TEST_CASE("a lamp ahead within the horizon is triggered") {
    LampBank bank({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}, 1.0);
    // Predicted position 0.3 + 1.0 * 0.15 = 0.45 reaches the lamp at 0.4.
    control_step(bank, track_at(0.3, 1.0), config_with(0.15, 0.1), 10);
    CHECK(bank.is_on(3));       // 0.4 <= 0.45
    CHECK_FALSE(bank.is_on(4)); // 0.5 > 0.45
    CHECK(bank.is_on(2));       // still within r + lag_margin
    CHECK_FALSE(bank.is_on(0)); // 0.3 > 0.1 + 0.1: already passed
}

TEST_CASE("a lamp passed by more than the lag margin is reset") {
    LampBank bank({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}, 1.0);
    bank.trigger(3, 1); // lamp at 0.4 is on
    control_step(bank, track_at(0.55, 1.0), config_with(0.0, 0.1), 2);
    CHECK_FALSE(bank.is_on(3)); // 0.55 > 0.4 + 0.1
}

TEST_CASE("a stationary track below the lamps produces no events") {
    LampBank bank = LampBank::evenly_spaced(1.0);
    control_step(bank, track_at(0.01, 0.0), config_with(0.15, 0.05), 3);
    CHECK(bank.events().empty());
    CHECK(bank.port_register() == 0x00);
}

TEST_CASE("a track without a position leaves the bank unchanged") {
    LampBank bank = LampBank::evenly_spaced(1.0);
    control_step(bank, TrackState{}, config_with(0.15, 0.05), 0);
    CHECK(bank.events().empty());
}

TEST_CASE("control steps are idempotent per frame state") {
    LampBank once = LampBank::evenly_spaced(1.0);
    LampBank twice = LampBank::evenly_spaced(1.0);
    const TrackState track = track_at(0.3, 1.0);
    const ControllerConfig config = config_with(0.15, 0.05);
    control_step(once, track, config, 7);
    control_step(twice, track, config, 7);
    control_step(twice, track, config, 7);
    CHECK(once.port_register() == twice.port_register());
    CHECK(once.events() == twice.events());
}

TEST_CASE("before the first speed sample presence switching uses the design speed") {
    LampBank bank = LampBank::evenly_spaced(1.0);
    // No speed yet: horizon is v_fallback * lead_time = 2.5 * 0.12 = 0.3 m.
    control_step(bank, track_at(0.08, std::nullopt), config_with(0.12, 0.05), 0);
    CHECK(bank.is_on(0)); // 0.125
    CHECK(bank.is_on(1)); // 0.25
    CHECK(bank.is_on(2)); // 0.375 <= 0.38
    CHECK_FALSE(bank.is_on(3));
}

TEST_CASE("a full constant-speed pass triggers then resets every covered lamp") {
    const double v = 1.0;
    const double dt = 0.04;
    const ControllerConfig config = config_with(0.12, 0.05);
    const Calibration cal = calibrate(1.0, 400.0, 25.0, 1.0, 1.075);

    LampBank bank = LampBank::evenly_spaced(1.0);
    TrackState track;
    const double r0 = 0.02;
    std::vector<double> trigger_time(LampBank::kLampCount, -1.0);
    for (int k = 0; r0 + v * k * dt < 1.2; ++k) {
        const double r = r0 + v * k * dt;
        Detection d{k, 100, PixelPoint{r / cal.c, 0.0}};
        track = update_track(std::move(track), d, cal);
        control_step(bank, track, config, k);
        for (int i = 0; i < LampBank::kLampCount; ++i)
            if (trigger_time[static_cast<std::size_t>(i)] < 0.0 && bank.is_on(i))
                trigger_time[static_cast<std::size_t>(i)] = k * dt;
    }

    for (int i = 0; i < LampBank::kLampCount; ++i) {
        int triggers = 0, resets = 0;
        bool reset_after_trigger = false;
        for (const auto& e : bank.events()) {
            if (e.lamp != i) continue;
            if (e.action == LampAction::Trigger) ++triggers;
            if (e.action == LampAction::Reset) {
                ++resets;
                reset_after_trigger = triggers > 0;
            }
        }
        CHECK(triggers == 1);
        CHECK(resets == 1);
        CHECK(reset_after_trigger);

        // lead_time >= frame_interval: the trigger lands before the object
        // reaches the lamp.
        const double arrival = (bank.positions()[i] - r0) / v;
        CHECK(trigger_time[static_cast<std::size_t>(i)] >= 0.0);
        CHECK(trigger_time[static_cast<std::size_t>(i)] < arrival);
    }
    CHECK(bank.port_register() == 0x00);
    CHECK(LampBank::replay_register(bank.events()) == 0x00);
}

TEST_CASE("switch-on offset is the ground-truth gap at the switch instant") {
    const auto trajectory = [](double t) { return 1.0 * t; };
    LampBank bank({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}, 1.0);

    bank.trigger(3, 10); // frame 10 at 25 fps -> t = 0.4, lamp at 0.4
    const auto exact = switch_on_offset(bank, 3, trajectory, 0.04, 0.0);
    REQUIRE(exact.has_value());
    CHECK(*exact == doctest::Approx(0.0).epsilon(1e-12));

    bank.trigger(4, 9); // one frame early for the lamp at 0.5... offset vs 0.5
    const auto early = switch_on_offset(bank, 4, trajectory, 0.04, 0.0);
    REQUIRE(early.has_value());
    CHECK(*early == doctest::Approx(0.36 - 0.5).epsilon(1e-12));

    // One frame of travel at 1 m/s and 25 fps is 0.04 m.
    LampBank single({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}, 1.0);
    single.trigger(3, 9);
    const auto one_frame_early = switch_on_offset(single, 3, trajectory, 0.04, 0.0);
    CHECK(*one_frame_early == doctest::Approx(-0.04).epsilon(1e-12));

    CHECK_FALSE(switch_on_offset(bank, 7, trajectory, 0.04, 0.0).has_value());

    // Processing latency shifts the effective switch time.
    const auto delayed = switch_on_offset(single, 3, trajectory, 0.04, 0.1);
    CHECK(*delayed == doctest::Approx(0.46 - 0.4).epsilon(1e-12));
}

TEST_CASE("the event log serializes with a running register column") {
    LampBank bank = LampBank::evenly_spaced(1.0);
    bank.trigger(0, 4);
    bank.trigger(3, 5);
    bank.reset(0, 9);
    const std::string csv = events_to_csv(bank.events());
    CHECK(csv ==
          "frame_index,lamp_index,action,register_hex\n"
          "4,0,Trigger,0x01\n"
          "5,3,Trigger,0x09\n"
          "9,0,Reset,0x08\n");
}
