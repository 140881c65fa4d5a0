#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arls/kinematics.hpp"

namespace arls {

enum class LampAction { Trigger, Reset };

struct LampEvent {
    std::int64_t frame_index = 0;
    int lamp = 0;
    LampAction action = LampAction::Trigger;

    bool operator==(const LampEvent&) const = default;
};

/// Eight latched road lamps behind an emulated 8-bit parallel-port
/// register. Each lamp is a bistable latch: Trigger sets it, Reset clears
/// it, repeated signals are recorded in the event log but change nothing.
class LampBank {
public:
    static constexpr int kLampCount = 8;

    /// Positions must be strictly increasing and within [0, segment_length].
    LampBank(const std::array<double, kLampCount>& positions, double segment_length);

    /// Lamps at segment_length * (i+1)/8, i.e. evenly spaced with the last
    /// lamp at the segment end.
    static LampBank evenly_spaced(double segment_length);
    static std::array<double, kLampCount> even_positions(double segment_length);

    void trigger(int lamp, std::int64_t frame_index);
    void reset(int lamp, std::int64_t frame_index);

    bool is_on(int lamp) const;
    const std::array<double, kLampCount>& positions() const { return positions_; }
    const std::vector<LampEvent>& events() const { return events_; }

    /// Bit i is 1 iff lamp i is on; lamp 0 is the least significant bit.
    std::uint8_t port_register() const;

    /// Folds an event log from the all-off state into the register byte it
    /// produces.
    static std::uint8_t replay_register(const std::vector<LampEvent>& events);

private:
    void check_index(int lamp) const;

    std::array<bool, kLampCount> on_{};
    std::array<double, kLampCount> positions_{};
    std::vector<LampEvent> events_;
};

/// Switching policy around the latched bank.
struct ControllerConfig {
    double lead_time = 0.12;          // s: switch on when arrival is this close
    double lag_margin = 0.05;         // m: switch off this far past the lamp
    double processing_latency = 0.0;  // s: simulated per-frame compute delay
    double v_fallback = 2.5;          // m/s: design speed used before the first speed sample
};

/// One control decision per frame. With a speed estimate, a lamp is
/// triggered when the position predicted lead_time + processing_latency
/// ahead reaches it (and the object has not passed it by more than
/// lag_margin); with only a position, presence-based switching uses
/// v_fallback over lead_time instead. A lamp passed by more than lag_margin
/// is reset. A track without a position leaves the bank unchanged.
void control_step(LampBank& bank, const TrackState& track, const ControllerConfig& config,
                  std::int64_t frame_index);

/// Object position minus lamp position at the moment the lamp actually
/// switched on: the first Trigger event's frame time plus the processing
/// latency, evaluated on the ground-truth trajectory r(t). Negative means
/// the lamp lit before the object arrived. Absent when the lamp was never
/// triggered.
std::optional<double> switch_on_offset(const LampBank& bank, int lamp,
                                       const std::function<double(double)>& trajectory,
                                       double frame_interval, double processing_latency);

/// Event log as CSV: frame_index,lamp_index,action,register_hex -- the
/// register column is the port byte after each event, replayed from
/// all-off.
std::string events_to_csv(const std::vector<LampEvent>& events);

} // namespace arls
