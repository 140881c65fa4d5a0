#include "arls/controller.hpp"

#include <cstdio>
#include <stdexcept>

namespace arls {

LampBank::LampBank(const std::array<double, kLampCount>& positions, double segment_length)
    : positions_(positions) {
    for (int i = 0; i < kLampCount; ++i) {
        if (positions_[i] < 0.0 || positions_[i] > segment_length)
            throw std::invalid_argument("lamp position outside the segment");
        if (i > 0 && positions_[i] <= positions_[i - 1])
            throw std::invalid_argument("lamp positions must be strictly increasing");
    }
}

std::array<double, LampBank::kLampCount> LampBank::even_positions(double segment_length) {
    std::array<double, kLampCount> positions{};
    for (int i = 0; i < kLampCount; ++i)
        positions[i] = segment_length * static_cast<double>(i + 1) / kLampCount;
    return positions;
}

LampBank LampBank::evenly_spaced(double segment_length) {
    return LampBank(even_positions(segment_length), segment_length);
}

void LampBank::check_index(int lamp) const {
    if (lamp < 0 || lamp >= kLampCount)
        throw std::out_of_range("lamp index out of range");
}

void LampBank::trigger(int lamp, std::int64_t frame_index) {
    check_index(lamp);
    events_.push_back({frame_index, lamp, LampAction::Trigger});
    on_[lamp] = true; // latch: no-op if already on
}

void LampBank::reset(int lamp, std::int64_t frame_index) {
    check_index(lamp);
    events_.push_back({frame_index, lamp, LampAction::Reset});
    on_[lamp] = false;
}

bool LampBank::is_on(int lamp) const {
    check_index(lamp);
    return on_[lamp];
}

std::uint8_t LampBank::port_register() const {
    std::uint8_t value = 0;
    for (int i = 0; i < kLampCount; ++i)
        if (on_[i]) value |= static_cast<std::uint8_t>(1u << i);
    return value;
}

std::uint8_t LampBank::replay_register(const std::vector<LampEvent>& events) {
    std::uint8_t value = 0;
    for (const auto& e : events) {
        const auto bit = static_cast<std::uint8_t>(1u << e.lamp);
        if (e.action == LampAction::Trigger)
            value |= bit;
        else
            value = static_cast<std::uint8_t>(value & ~bit);
    }
    return value;
}

void control_step(LampBank& bank, const TrackState& track, const ControllerConfig& config,
                  std::int64_t frame_index) {
    if (!track.has_position()) return;

    const double r = *track.r;
    // With a speed estimate the horizon also covers the compute delay;
    // before the first sample, presence switching assumes the design speed.
    const double reach = track.v_mean
                             ? predict(r, *track.v_mean,
                                       config.lead_time + config.processing_latency)
                             : r + config.v_fallback * config.lead_time;

    for (int i = 0; i < LampBank::kLampCount; ++i) {
        const double pos = bank.positions()[i];
        if (!bank.is_on(i) && reach >= pos && r <= pos + config.lag_margin) {
            bank.trigger(i, frame_index);
        } else if (bank.is_on(i) && r > pos + config.lag_margin) {
            bank.reset(i, frame_index);
        }
    }
}

std::optional<double> switch_on_offset(const LampBank& bank, int lamp,
                                       const std::function<double(double)>& trajectory,
                                       double frame_interval, double processing_latency) {
    for (const auto& e : bank.events()) {
        if (e.lamp != lamp || e.action != LampAction::Trigger) continue;
        const double t = static_cast<double>(e.frame_index) * frame_interval +
                         processing_latency;
        return trajectory(t) - bank.positions()[lamp];
    }
    return std::nullopt;
}

std::string events_to_csv(const std::vector<LampEvent>& events) {
    std::string csv = "frame_index,lamp_index,action,register_hex\n";
    std::uint8_t reg = 0;
    for (const auto& e : events) {
        const auto bit = static_cast<std::uint8_t>(1u << e.lamp);
        if (e.action == LampAction::Trigger)
            reg |= bit;
        else
            reg = static_cast<std::uint8_t>(reg & ~bit);
        char line[64];
        std::snprintf(line, sizeof line, "%lld,%d,%s,0x%02X\n",
                      static_cast<long long>(e.frame_index), e.lamp,
                      e.action == LampAction::Trigger ? "Trigger" : "Reset", reg);
        csv += line;
    }
    return csv;
}

} // namespace arls
