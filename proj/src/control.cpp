#include "antjoint/control.hpp"

#include <cmath>
#include <stdexcept>

#include "antjoint/units.hpp"

namespace antjoint {

const char* to_string(PairState s) {
    switch (s) {
        case PairState::S1_OnOff: return "S1";
        case PairState::S2_OnOn: return "S2";
        case PairState::S3_OffOff: return "S3";
        case PairState::S4_OffOn: return "S4";
    }
    return "?";
}

PairState pair_state_from_string(const std::string& s) {
    if (s == "S1") return PairState::S1_OnOff;
    if (s == "S2") return PairState::S2_OnOn;
    if (s == "S3") return PairState::S3_OffOff;
    if (s == "S4") return PairState::S4_OffOn;
    throw std::invalid_argument("unknown pair state: " + s);
}

PairOutputs state_outputs(PairState s) {
    switch (s) {
        case PairState::S1_OnOff: return {true, false};
        case PairState::S2_OnOn: return {true, true};
        case PairState::S3_OffOff: return {false, false};
        case PairState::S4_OffOn: return {false, true};
    }
    return {};
}

PairState pair_state_from_outputs(bool hasel_on, bool clutch_on) {
    if (hasel_on) return clutch_on ? PairState::S2_OnOn : PairState::S1_OnOff;
    return clutch_on ? PairState::S4_OffOn : PairState::S3_OffOff;
}

double waveform_value(const WaveformSpec& w, double t_s) {
    if (t_s < 0)
        throw std::invalid_argument("waveform_value: t must be >= 0");
    if (const auto* ramp = std::get_if<RampWave>(&w)) {
        if (ramp->period_s <= 0 || ramp->rise_fraction <= 0 || ramp->rise_fraction > 1)
            throw std::invalid_argument("waveform_value: bad ramp parameters");
        double phase = std::fmod(t_s, ramp->period_s) / ramp->period_s;
        if (phase < ramp->rise_fraction)
            return ramp->peak * phase / ramp->rise_fraction;
        if (ramp->rise_fraction >= 1.0) return 0.0;
        return ramp->peak * (1.0 - (phase - ramp->rise_fraction) / (1.0 - ramp->rise_fraction));
    }
    if (const auto* sq = std::get_if<SquareAcWave>(&w)) {
        if (sq->frequency_hz <= 0)
            throw std::invalid_argument("waveform_value: frequency must be positive");
        const double half_periods = std::floor(t_s * sq->frequency_hz * 2.0);
        const bool positive = std::fmod(half_periods, 2.0) == 0.0;
        return positive ? sq->amplitude : -sq->amplitude;
    }
    return std::get<ConstantWave>(w).level;
}

void GaitParams::validate(const ClutchSpec& clutch) const {
    if (frequency_hz <= 0)
        throw std::invalid_argument("GaitParams: frequency must be positive");
    if (hasel_peak_kv < 0 || clutch_amplitude_v < 0)
        throw std::invalid_argument("GaitParams: voltages must be >= 0");
    if (clutch_lead_time_ms < clutch.release_time_ms)
        throw std::invalid_argument("GaitParams: clutch_lead_time must be >= clutch release time");
    if (braking && (braking->voltage_v < 0 || braking->voltage_v > 150.0))
        throw std::invalid_argument("GaitParams: braking voltage must be in [0, 150 V]");
}

namespace {

// True when the given side is the pulling side at time t.
bool side_active(double t_s, double period_s, Side side) {
    double phase = std::fmod(t_s, period_s);
    if (phase < 0) phase += period_s;
    const bool right_half = phase < period_s / 2.0;
    return side == Side::Right ? right_half : !right_half;
}

}  // namespace

PairCommand brake_command(Side moving_side, double braking_voltage_v) {
    if (braking_voltage_v < 0 || braking_voltage_v > 150.0)
        throw std::invalid_argument("brake_command: voltage must be in [0, 150 V]");
    PairCommand c;
    c.state = PairState::S4_OffOn;
    c.command.hasel_kv = 0.0;
    c.command.clutch_v = braking_voltage_v;
    c.command.clutch_on = true;
    return c;
}

GaitOutput gait_controller(double t_s, const GaitParams& p, const ClutchSpec& clutch) {
    p.validate(clutch);
    const double period = 1.0 / p.frequency_hz;
    const double lead_s = p.clutch_lead_time_ms * kMsToS;
    const RampWave half_ramp{period / 2.0, p.hasel_peak_kv, 0.5};
    const double clutch_v = std::min(p.clutch_amplitude_v, p.clutch_voltage_cap_v);

    auto make_side = [&](Side side) {
        PairCommand c;
        const bool hasel_on = side_active(t_s, period, side);
        const bool clutch_on = side_active(t_s + lead_s, period, side);
        double phase = std::fmod(t_s, period / 2.0);
        if (phase < 0) phase += period / 2.0;
        c.command.hasel_kv = hasel_on ? waveform_value(half_ramp, phase) : 0.0;
        c.command.clutch_v = clutch_on ? clutch_v : 0.0;
        c.command.clutch_on = clutch_on;
        c.state = pair_state_from_outputs(hasel_on, clutch_on);
        return c;
    };

    GaitOutput out;
    out.right = make_side(Side::Right);
    out.left = make_side(Side::Left);
    if (p.braking) {
        const Side opposite = p.braking->moving_side == Side::Right ? Side::Left : Side::Right;
        PairCommand brake = brake_command(p.braking->moving_side, p.braking->voltage_v);
        (opposite == Side::Left ? out.left : out.right) = brake;
    }
    return out;
}

CommandSource gait_command_source(const GaitParams& p, const ClutchSpec& clutch) {
    p.validate(clutch);
    return [p, clutch](double t_s) {
        const GaitOutput g = gait_controller(t_s, p, clutch);
        JointCommands c;
        c.left = g.left.command;
        c.right = g.right.command;
        return c;
    };
}

std::vector<ScheduleRow> sample_gait(const GaitParams& p, const ClutchSpec& clutch,
                                     double duration_s, double sample_period_s) {
    if (duration_s <= 0 || sample_period_s <= 0)
        throw std::invalid_argument("sample_gait: duration and sample period must be positive");
    const long n = std::lround(duration_s / sample_period_s);
    const SquareAcWave ac{10.0, 1.0};  // polarity carrier of the clutch drive
    std::vector<ScheduleRow> rows;
    rows.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        const double t = i * sample_period_s;
        const GaitOutput g = gait_controller(t, p, clutch);
        ScheduleRow row;
        row.time_s = t;
        row.left = g.left.state;
        row.right = g.right.state;
        row.v_hasel_left_kv = g.left.command.hasel_kv;
        row.v_hasel_right_kv = g.right.command.hasel_kv;
        const double sign = waveform_value(ac, t);
        row.v_clutch_left_v = g.left.command.clutch_v * sign;
        row.v_clutch_right_v = g.right.command.clutch_v * sign;
        row.brake_segment = p.braking.has_value();
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScheduleViolation> validate_schedule(const std::vector<ScheduleRow>& rows,
                                                 const ClutchSpec& timing) {
    std::vector<ScheduleViolation> violations;
    if (rows.size() < 2) return violations;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].time_s <= rows[i - 1].time_s)
            throw std::invalid_argument("validate_schedule: timestamps must be strictly increasing");
    }

    const double release_s = timing.release_time_ms * kMsToS;
    const double lock_s = timing.lock_time_ms * kMsToS;

    auto outputs = [](const ScheduleRow& r, Side s) {
        return state_outputs(s == Side::Left ? r.left : r.right);
    };

    // Last command-off / hasel-off transition times per side.
    double last_clutch_off[2] = {-1e300, -1e300};
    double last_hasel_off[2] = {-1e300, -1e300};
    bool in_simultaneous = false;

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = rows[i].time_s;
        for (Side side : {Side::Left, Side::Right}) {
            const int si = side == Side::Left ? 0 : 1;
            const int ai = 1 - si;
            const Side anta = side == Side::Left ? Side::Right : Side::Left;
            const PairOutputs prev = outputs(rows[i - 1], side);
            const PairOutputs cur = outputs(rows[i], side);
            const PairOutputs anta_cur = outputs(rows[i], anta);

            if (prev.clutch_on && !cur.clutch_on) last_clutch_off[si] = t;
            if (prev.hasel_on && !cur.hasel_on) last_hasel_off[si] = t;

            if (!prev.hasel_on && cur.hasel_on) {  // ramp onset
                const bool anta_engaged = anta_cur.clutch_on;
                const bool release_incomplete = t < last_clutch_off[ai] + release_s;
                if (anta_engaged || release_incomplete) {
                    violations.push_back({ViolationKind::RampBeforeAntagonistRelease, t, side,
                                          "HASEL ramp onset before antagonist clutch release completed"});
                }
            }
            if (!prev.clutch_on && cur.clutch_on) {  // engage command
                if (t >= last_hasel_off[si] && t < last_hasel_off[si] + lock_s) {
                    violations.push_back({ViolationKind::EngageDuringHaselRelease, t, side,
                                          "clutch engaged while its HASEL is mid-release"});
                }
            }
        }
        const bool both_s2 = rows[i].left == PairState::S2_OnOn &&
                             rows[i].right == PairState::S2_OnOn;
        if (both_s2 && !rows[i].brake_segment) {
            if (!in_simultaneous)
                violations.push_back({ViolationKind::SimultaneousDrive, t, Side::Left,
                                      "both sides in S2 outside a brake segment"});
            in_simultaneous = true;
        } else {
            in_simultaneous = false;
        }
    }
    return violations;
}

}  // namespace antjoint
