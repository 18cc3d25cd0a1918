#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "antjoint/clutch.hpp"
#include "antjoint/hasel.hpp"

namespace antjoint {

enum class GravityMode { VerticalHanging, Horizontal };
enum class Side { Left, Right };

const char* to_string(GravityMode m);
const char* to_string(Side s);

// Rigid limb rotating about the joint pivot, modeled as a uniform rod.
struct LimbSpec {
    double length_cm = 12.0;
    double mass_g = 3.8;
    double damping_nms_per_rad = 2.4e-4;
    GravityMode gravity_mode = GravityMode::VerticalHanging;

    void validate() const;
    double inertia_kg_m2() const;      // m*l^2/3 about the pivot
    double com_distance_m() const;     // l/2
};

// Lever-arm tendon routing. Tendons are unilateral: stiff one-sided
// springs past their slack, with a short smoothing zone at pickup.
struct TendonSpec {
    double lever_radius_mm = 6.0;
    double slack_per_side_mm = 0.0;
    double taut_stiffness_n_per_mm = 200.0;
    double smoothing_zone_mm = 0.05;

    void validate() const;
};

// Internal coordinates of one HASEL-clutch-sleeve series chain.
struct UnitInternal {
    double hasel_contraction_mm = 0.0;
    double clutch_stretch_mm = 0.0;        // sleeve stretch = slider position
    double effective_hasel_kv = 0.0;       // first-order lag of the command
    double clutch_drive_v = 0.0;           // voltage held through release
    ClutchEngagementState engagement;
};

// One HASEL + clutch + sleeve series chain with tendon attachment.
struct MuscleUnit {
    Side side = Side::Left;
    HaselModel hasel;
    ClutchForceModel clutch_force;
    ClutchSpec clutch;
    SleeveSpec sleeve;
    UnitInternal internal;
};

struct JointState {
    double theta_rad = 0.0;
    double theta_dot_rad_s = 0.0;
    double time_s = 0.0;
    UnitInternal left;
    UnitInternal right;
};

// Per-channel command for one side.
struct SideCommand {
    double hasel_kv = 0.0;
    double clutch_v = 0.0;
    bool clutch_on = false;
};

struct JointCommands {
    SideCommand left;
    SideCommand right;
};

struct TraceRow {
    double time_s = 0.0;
    double theta_deg = 0.0;
    double theta_dot_rad_s = 0.0;
    double tension_left_n = 0.0;
    double tension_right_n = 0.0;
    double v_hasel_left_kv = 0.0;
    double v_hasel_right_kv = 0.0;
    double v_clutch_left_v = 0.0;
    double v_clutch_right_v = 0.0;
    ClutchMode mode_left = ClutchMode::Released;
    ClutchMode mode_right = ClutchMode::Released;
};

using Trace = std::vector<TraceRow>;

struct JointConfig {
    LimbSpec limb;
    TendonSpec tendon;
    MuscleUnit left;
    MuscleUnit right;
};

// Tendon length payed out to one side as the limb rotates. Positive means
// the side's tendon is payed out; its unit may shorten or go slack.
double tendon_excursion(double theta_rad, double lever_radius_mm, Side side);

struct UnitTensionResult {
    double tension_n = 0.0;
    double hasel_contraction_mm = 0.0;
    double clutch_stretch_mm = 0.0;
    bool slider_slipped = false;
    bool sleeve_saturated = false;
};

// Solve the one-dimensional series force balance of one unit: tendon,
// HASEL element and clutch element all carry the same tension and their
// elongations sum to the demanded lengthening. demanded_elongation_mm > 0
// means the chain must get longer (slack is consumed first).
//
// clutch_capacity_n is the Coulomb capacity of the slider at this instant
// (holding force scaled by the engagement ramp).
UnitTensionResult unit_tension(const MuscleUnit& unit, double demanded_elongation_mm,
                               double hasel_kv, double clutch_capacity_n,
                               const TendonSpec& tendon);

// Net torque about the pivot from tendon tensions, gravity and damping.
double joint_torque(double theta_rad, double theta_dot_rad_s, double left_tension_n,
                    double right_tension_n, const LimbSpec& limb,
                    const TendonSpec& tendon);

struct StepOutput {
    JointState state;
    double tension_left_n = 0.0;
    double tension_right_n = 0.0;
    double capacity_left_n = 0.0;
    double capacity_right_n = 0.0;
};

// Semi-implicit Euler step with quasi-static series balance per side and
// stick-slip clutch events. Throws SimulationError on non-finite state.
StepOutput step(const JointState& state, const JointConfig& config,
                const JointCommands& commands, double dt_s);

class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, const JointState& state)
        : std::runtime_error(what), state_(state) {}
    const JointState& state() const { return state_; }

private:
    JointState state_;
};

using CommandSource = std::function<JointCommands(double time_s)>;

Trace simulate(const JointState& initial, const JointConfig& config,
               const CommandSource& controller, double duration_s, double dt_s,
               double sample_period_s);

// Peak-to-peak joint angle over the post-settling window, degrees.
double range_of_motion(const Trace& trace, int settle_cycles, double frequency_hz);

// Total mechanical energy: rod kinetic + gravitational + elastic stored in
// sleeves, passive shells and taut tendons. Joules.
double mechanical_energy(const JointState& state, const JointConfig& config);

}  // namespace antjoint
