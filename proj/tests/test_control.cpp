#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "antjoint/control.hpp"
#include "antjoint/units.hpp"

using namespace antjoint;

TEST_CASE("pair state names and output table round trip") {
    const PairState all[] = {PairState::S1_OnOff, PairState::S2_OnOn,
                             PairState::S3_OffOff, PairState::S4_OffOn};
    for (PairState s : all) {
        CHECK(pair_state_from_string(to_string(s)) == s);
        const PairOutputs o = state_outputs(s);
        CHECK(pair_state_from_outputs(o.hasel_on, o.clutch_on) == s);
    }
    CHECK(state_outputs(PairState::S1_OnOff).hasel_on);
    CHECK_FALSE(state_outputs(PairState::S1_OnOff).clutch_on);
    CHECK(state_outputs(PairState::S2_OnOn).clutch_on);
    CHECK_FALSE(state_outputs(PairState::S3_OffOff).hasel_on);
    CHECK(state_outputs(PairState::S4_OffOn).clutch_on);
    CHECK_FALSE(state_outputs(PairState::S4_OffOn).hasel_on);
    CHECK_THROWS_AS(pair_state_from_string("S5"), std::invalid_argument);
}

TEST_CASE("ramp waveform rises and falls over each period") {
    const WaveformSpec w = RampWave{0.4, 8.0, 0.5};
    CHECK(waveform_value(w, 0.0) == 0.0);
    CHECK(waveform_value(w, 0.1) == doctest::Approx(4.0));
    CHECK(waveform_value(w, 0.2) == doctest::Approx(8.0));
    CHECK(waveform_value(w, 0.3) == doctest::Approx(4.0));
    CHECK(waveform_value(w, 0.4) == doctest::Approx(0.0));
    // Periodicity.
    CHECK(waveform_value(w, 0.9) == doctest::Approx(waveform_value(w, 0.1)));
    // Sawtooth limit: rise over the full period.
    const WaveformSpec saw = RampWave{1.0, 2.0, 1.0};
    CHECK(waveform_value(saw, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(waveform_value(w, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(waveform_value(WaveformSpec{RampWave{0.0, 1.0, 0.5}}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("square AC waveform alternates every half period starting positive") {
    const WaveformSpec w = SquareAcWave{10.0, 100.0};
    CHECK(waveform_value(w, 0.0) == 100.0);
    CHECK(waveform_value(w, 0.04) == 100.0);
    CHECK(waveform_value(w, 0.06) == -100.0);
    CHECK(waveform_value(w, 0.11) == 100.0);
    CHECK(waveform_value(WaveformSpec{ConstantWave{3.5}}, 17.0) == 3.5);
}

TEST_CASE("gait alternates sides with the right half first") {
    GaitParams p;  // 2.5 Hz, 8 kV, lead 20 ms
    const ClutchSpec clutch;
    const double T = 1.0 / p.frequency_hz;

    const GaitOutput start = gait_controller(0.0, p, clutch);
    CHECK(start.right.state == PairState::S2_OnOn);
    CHECK(start.left.state == PairState::S3_OffOff);

    const GaitOutput mid = gait_controller(0.55 * T, p, clutch);
    CHECK(mid.left.state == PairState::S2_OnOn);
    CHECK(mid.right.state == PairState::S3_OffOff);

    // HASEL ramp peaks a quarter period into the active half.
    const GaitOutput quarter = gait_controller(T / 4.0, p, clutch);
    CHECK(quarter.right.command.hasel_kv == doctest::Approx(8.0));
    CHECK(quarter.left.command.hasel_kv == 0.0);

    // Periodic, and the halves mirror each other.
    for (double t : {0.03, 0.11, 0.17}) {
        const GaitOutput a = gait_controller(t, p, clutch);
        const GaitOutput b = gait_controller(t + T, p, clutch);
        CHECK(a.right.state == b.right.state);
        CHECK(a.right.command.hasel_kv == doctest::Approx(b.right.command.hasel_kv));
        const GaitOutput m = gait_controller(t + T / 2.0, p, clutch);
        CHECK(m.left.state == a.right.state);
        CHECK(m.left.command.hasel_kv == doctest::Approx(a.right.command.hasel_kv));
    }
}

TEST_CASE("clutch transitions lead the hasel ramps") {
    GaitParams p;
    const ClutchSpec clutch;
    const double T = 1.0 / p.frequency_hz;
    const double lead = p.clutch_lead_time_ms * kMsToS;

    // Just before the lead point the active side is still S2.
    const GaitOutput before = gait_controller(T / 2.0 - lead - 1e-4, p, clutch);
    CHECK(before.right.state == PairState::S2_OnOn);
    // Inside the lead window the clutch has dropped while the ramp finishes.
    const GaitOutput inside = gait_controller(T / 2.0 - lead + 1e-4, p, clutch);
    CHECK(inside.right.state == PairState::S1_OnOff);
    CHECK(inside.right.command.hasel_kv > 0.0);
    // ... and the incoming side pre-engages its clutch before its ramp.
    CHECK(inside.left.state == PairState::S4_OffOn);
}

TEST_CASE("gait validation enforces the release-time margin") {
    GaitParams p;
    ClutchSpec clutch;
    p.clutch_lead_time_ms = 10.0;  // shorter than the 15 ms release
    CHECK_THROWS_AS(p.validate(clutch), std::invalid_argument);
    CHECK_THROWS_AS(gait_controller(0.0, p, clutch), std::invalid_argument);
    p.clutch_lead_time_ms = 20.0;
    p.frequency_hz = -1.0;
    CHECK_THROWS_AS(p.validate(clutch), std::invalid_argument);
}

TEST_CASE("brake command pins the opposite unit in S4") {
    const PairCommand b = brake_command(Side::Right, 100.0);
    CHECK(b.state == PairState::S4_OffOn);
    CHECK(b.command.clutch_on);
    CHECK(b.command.clutch_v == 100.0);
    CHECK(b.command.hasel_kv == 0.0);
    CHECK_THROWS_AS(brake_command(Side::Right, 200.0), std::invalid_argument);

    GaitParams p;
    p.braking = BrakeSetting{Side::Right, 120.0};
    const ClutchSpec clutch;
    for (double t : {0.0, 0.1, 0.27, 0.33}) {
        const GaitOutput g = gait_controller(t, p, clutch);
        CHECK(g.left.state == PairState::S4_OffOn);
        CHECK(g.left.command.clutch_v == 120.0);
    }
}

TEST_CASE("command source matches the controller outputs") {
    GaitParams p;
    const ClutchSpec clutch;
    const CommandSource src = gait_command_source(p, clutch);
    for (double t : {0.0, 0.07, 0.21, 0.38}) {
        const JointCommands c = src(t);
        const GaitOutput g = gait_controller(t, p, clutch);
        CHECK(c.right.hasel_kv == g.right.command.hasel_kv);
        CHECK(c.right.clutch_on == g.right.command.clutch_on);
        CHECK(c.left.clutch_v == g.left.command.clutch_v);
    }
}

TEST_CASE("sampled gait carries an alternating clutch polarity") {
    GaitParams p;
    const ClutchSpec clutch;
    const auto rows = sample_gait(p, clutch, 0.4, 1e-3);
    CHECK(rows.size() == 401);
    CHECK(rows.front().time_s == 0.0);
    CHECK(rows.back().time_s == doctest::Approx(0.4));

    bool saw_positive = false, saw_negative = false;
    for (const auto& r : rows) {
        CHECK(std::abs(r.v_clutch_right_v) <= p.clutch_voltage_cap_v);
        if (r.v_clutch_right_v > 0) saw_positive = true;
        if (r.v_clutch_right_v < 0) saw_negative = true;
        CHECK_FALSE(r.brake_segment);
    }
    CHECK(saw_positive);
    CHECK(saw_negative);
    CHECK_THROWS_AS(sample_gait(p, clutch, 0.0, 1e-3), std::invalid_argument);
}

TEST_CASE("the default gait schedule is violation free") {
    GaitParams p;
    const ClutchSpec clutch;
    const auto rows = sample_gait(p, clutch, 2.0, 1e-3);
    CHECK(validate_schedule(rows, clutch).empty());
}

namespace {

ScheduleRow row_at(double t, PairState left, PairState right, bool brake = false) {
    ScheduleRow r;
    r.time_s = t;
    r.left = left;
    r.right = right;
    r.brake_segment = brake;
    return r;
}

}  // namespace

TEST_CASE("validate_schedule flags a ramp against an engaged antagonist") {
    const ClutchSpec clutch;
    const std::vector<ScheduleRow> rows{
        row_at(0.00, PairState::S4_OffOn, PairState::S3_OffOff),
        row_at(0.01, PairState::S4_OffOn, PairState::S1_OnOff),
    };
    const auto v = validate_schedule(rows, clutch);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::RampBeforeAntagonistRelease);
    CHECK(v[0].side == Side::Right);
    CHECK(v[0].time_s == doctest::Approx(0.01));
}

TEST_CASE("validate_schedule flags a ramp inside the antagonist release window") {
    const ClutchSpec clutch;  // 15 ms release
    const std::vector<ScheduleRow> rows{
        row_at(0.000, PairState::S4_OffOn, PairState::S3_OffOff),
        row_at(0.010, PairState::S3_OffOff, PairState::S3_OffOff),  // left clutch off
        row_at(0.015, PairState::S3_OffOff, PairState::S1_OnOff),   // 5 ms later: too soon
    };
    const auto v = validate_schedule(rows, clutch);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::RampBeforeAntagonistRelease);

    // Waiting out the full release window clears it.
    const std::vector<ScheduleRow> ok{
        row_at(0.000, PairState::S4_OffOn, PairState::S3_OffOff),
        row_at(0.010, PairState::S3_OffOff, PairState::S3_OffOff),
        row_at(0.026, PairState::S3_OffOff, PairState::S1_OnOff),
    };
    CHECK(validate_schedule(ok, clutch).empty());
}

TEST_CASE("validate_schedule flags engagement during the hasel release") {
    const ClutchSpec clutch;  // 5 ms lock
    const std::vector<ScheduleRow> rows{
        row_at(0.000, PairState::S3_OffOff, PairState::S1_OnOff),
        row_at(0.010, PairState::S3_OffOff, PairState::S3_OffOff),  // right hasel off
        row_at(0.013, PairState::S3_OffOff, PairState::S4_OffOn),   // engage 3 ms later
    };
    const auto v = validate_schedule(rows, clutch);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::EngageDuringHaselRelease);
    CHECK(v[0].side == Side::Right);
}

TEST_CASE("validate_schedule flags simultaneous drive once per run") {
    const ClutchSpec clutch;
    // Both ramps already running, then both clutches engage together.
    std::vector<ScheduleRow> rows{
        row_at(0.00, PairState::S1_OnOff, PairState::S1_OnOff),
        row_at(0.10, PairState::S2_OnOn, PairState::S2_OnOn),
        row_at(0.11, PairState::S2_OnOn, PairState::S2_OnOn),
        row_at(0.12, PairState::S3_OffOff, PairState::S3_OffOff),
    };
    auto v = validate_schedule(rows, clutch);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::SimultaneousDrive);

    // A brake segment legitimizes the overlap.
    rows[1].brake_segment = rows[2].brake_segment = true;
    CHECK(validate_schedule(rows, clutch).empty());
}

TEST_CASE("validate_schedule requires increasing timestamps") {
    const ClutchSpec clutch;
    const std::vector<ScheduleRow> rows{
        row_at(0.01, PairState::S3_OffOff, PairState::S3_OffOff),
        row_at(0.01, PairState::S3_OffOff, PairState::S3_OffOff),
    };
    CHECK_THROWS_AS(validate_schedule(rows, clutch), std::invalid_argument);
    CHECK(validate_schedule({}, clutch).empty());
}
