#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "antjoint/clutch.hpp"
#include "antjoint/joint.hpp"

namespace antjoint {

// The four HASEL/clutch pair states: S1 (on/off), S2 (on/on), S3 (off/off),
// S4 (off/on).
enum class PairState { S1_OnOff, S2_OnOn, S3_OffOff, S4_OffOn };

const char* to_string(PairState s);
PairState pair_state_from_string(const std::string& s);

struct PairOutputs {
    bool hasel_on = false;
    bool clutch_on = false;
};

PairOutputs state_outputs(PairState s);
PairState pair_state_from_outputs(bool hasel_on, bool clutch_on);

struct RampWave {
    double period_s = 0.4;
    double peak = 8.0;
    double rise_fraction = 0.5;
};

struct SquareAcWave {
    double frequency_hz = 10.0;
    double amplitude = 100.0;
};

struct ConstantWave {
    double level = 0.0;
};

using WaveformSpec = std::variant<RampWave, SquareAcWave, ConstantWave>;

// Ramp: periodic rise 0 -> peak over rise_fraction * period, then a
// symmetric fall back to 0. SquareAC: +/- amplitude alternating every half
// period, +amplitude at t = 0. Constant: the level.
double waveform_value(const WaveformSpec& w, double t_s);

struct BrakeSetting {
    Side moving_side = Side::Right;  // side whose motion is to be stopped
    double voltage_v = 100.0;
};

struct GaitParams {
    double frequency_hz = 2.5;
    double hasel_peak_kv = 8.0;
    double clutch_amplitude_v = 100.0;
    double clutch_lead_time_ms = 20.0;
    double clutch_voltage_cap_v = 100.0;
    std::optional<BrakeSetting> braking;

    void validate(const ClutchSpec& clutch) const;
};

struct PairCommand {
    PairState state = PairState::S3_OffOff;
    SideCommand command;
};

struct GaitOutput {
    PairCommand left;
    PairCommand right;
};

// Feedforward alternating gait: first half-cycle right S2 / left S3,
// second half mirrored; clutch transitions lead the HASEL ramps by
// clutch_lead_time. Pure function of time.
GaitOutput gait_controller(double t_s, const GaitParams& p, const ClutchSpec& clutch);

// Override forcing the opposite-side unit into S4 at the braking voltage.
PairCommand brake_command(Side moving_side, double braking_voltage_v);

// Adapter to the simulator's command-source interface.
CommandSource gait_command_source(const GaitParams& p, const ClutchSpec& clutch);

struct ScheduleRow {
    double time_s = 0.0;
    PairState left = PairState::S3_OffOff;
    PairState right = PairState::S3_OffOff;
    double v_hasel_left_kv = 0.0;
    double v_hasel_right_kv = 0.0;
    double v_clutch_left_v = 0.0;
    double v_clutch_right_v = 0.0;
    bool brake_segment = false;
};

enum class ViolationKind {
    RampBeforeAntagonistRelease,  // HASEL on before antagonist clutch is free
    EngageDuringHaselRelease,     // clutch engage inside its HASEL's release
    SimultaneousDrive             // both sides S2 outside a brake segment
};

struct ScheduleViolation {
    ViolationKind kind;
    double time_s = 0.0;
    Side side = Side::Left;
    std::string message;
};

std::vector<ScheduleViolation> validate_schedule(const std::vector<ScheduleRow>& rows,
                                                 const ClutchSpec& timing);

// Sample a gait into schedule rows at the given period (for the checker
// and for command-trace export).
std::vector<ScheduleRow> sample_gait(const GaitParams& p, const ClutchSpec& clutch,
                                     double duration_s, double sample_period_s);

}  // namespace antjoint
