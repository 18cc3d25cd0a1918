#include "antjoint/joint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "antjoint/units.hpp"

namespace antjoint {

const char* to_string(GravityMode m) {
    return m == GravityMode::VerticalHanging ? "vertical_hanging" : "horizontal";
}

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

void LimbSpec::validate() const {
    if (length_cm <= 0 || mass_g <= 0)
        throw std::invalid_argument("LimbSpec: length and mass must be positive");
    if (damping_nms_per_rad < 0)
        throw std::invalid_argument("LimbSpec: damping must be >= 0");
}

double LimbSpec::inertia_kg_m2() const {
    const double m = mass_g * 1e-3;
    const double l = length_cm * 1e-2;
    return m * l * l / 3.0;
}

double LimbSpec::com_distance_m() const { return length_cm * 1e-2 / 2.0; }

void TendonSpec::validate() const {
    if (lever_radius_mm <= 0)
        throw std::invalid_argument("TendonSpec: lever radius must be positive");
    if (slack_per_side_mm < 0)
        throw std::invalid_argument("TendonSpec: slack must be >= 0");
    if (taut_stiffness_n_per_mm <= 0 || smoothing_zone_mm <= 0)
        throw std::invalid_argument("TendonSpec: stiffness and smoothing zone must be positive");
}

double tendon_excursion(double theta_rad, double lever_radius_mm, Side side) {
    const double e = lever_radius_mm * theta_rad;
    return side == Side::Right ? e : -e;
}

namespace {

// Tendon stretch beyond slack as a function of tension (inverse of the
// smoothed one-sided spring law).
double tendon_stretch_at_tension(double tension, const TendonSpec& t) {
    const double k = t.taut_stiffness_n_per_mm;
    const double us = t.smoothing_zone_mm;
    const double t_s = k * us / 2.0;
    if (tension <= 0) return 0.0;
    if (tension <= t_s) return std::sqrt(2.0 * us * tension / k);
    return tension / k + us / 2.0;
}

double tendon_tension_at_stretch(double stretch, const TendonSpec& t) {
    const double k = t.taut_stiffness_n_per_mm;
    const double us = t.smoothing_zone_mm;
    if (stretch <= 0) return 0.0;
    if (stretch <= us) return k * stretch * stretch / (2.0 * us);
    return k * (stretch - us / 2.0);
}

double tendon_stored_energy(double stretch, const TendonSpec& t) {
    const double k = t.taut_stiffness_n_per_mm;
    const double us = t.smoothing_zone_mm;
    if (stretch <= 0) return 0.0;
    if (stretch <= us) return k * stretch * stretch * stretch / (6.0 * us);
    const double w = stretch - us / 2.0;
    return k * us * us / 6.0 + k * (w * w - us * us / 4.0) / 2.0;
}

// Slider position (= sleeve stretch) at a given chain tension; Coulomb
// return mapping around the current stick position.
double slider_position_at_tension(double tension, double stick_pos, double capacity,
                                  double sleeve_rate) {
    const double sticking_force = sleeve_rate * stick_pos;
    if (tension > sticking_force + capacity) return (tension - capacity) / sleeve_rate;
    if (tension < sticking_force - capacity) return (tension + capacity) / sleeve_rate;
    return stick_pos;
}

}  // namespace

UnitTensionResult unit_tension(const MuscleUnit& unit, double demanded_elongation_mm,
                               double hasel_kv, double clutch_capacity_n,
                               const TendonSpec& tendon) {
    tendon.validate();
    unit.clutch.validate();
    unit.sleeve.validate();
    const double sleeve_rate = unit.sleeve.stiffness_n_per_mm(unit.clutch.stretchable_length_cm);
    const double stick_pos = unit.internal.clutch_stretch_mm;
    const double slack = tendon.slack_per_side_mm;
    const double cap = std::max(0.0, clutch_capacity_n);

    auto chain_elongation = [&](double tension) {
        const double d_tendon = slack + tendon_stretch_at_tension(tension, tendon);
        const double s = slider_position_at_tension(tension, stick_pos, cap, sleeve_rate);
        const double x = unit.hasel.contraction_at_tension(tension, hasel_kv);
        return d_tendon + s - x;
    };

    UnitTensionResult out;
    const double d0 = chain_elongation(0.0);
    double tension = 0.0;
    if (demanded_elongation_mm > d0) {
        double hi = 1.0;
        int guard = 0;
        while (chain_elongation(hi) < demanded_elongation_mm) {
            hi *= 2.0;
            if (++guard > 80)
                throw SimulationError("unit_tension: bracket expansion failed", JointState{});
        }
        double lo = 0.0;
        for (int i = 0; i < 200 && hi - lo > 1e-6; ++i) {
            const double mid = 0.5 * (lo + hi);
            (chain_elongation(mid) < demanded_elongation_mm ? lo : hi) = mid;
        }
        if (hi - lo > 1e-3)
            throw SimulationError("unit_tension: bisection did not converge", JointState{});
        tension = 0.5 * (lo + hi);
    }

    out.tension_n = tension;
    out.clutch_stretch_mm = slider_position_at_tension(tension, stick_pos, cap, sleeve_rate);
    out.hasel_contraction_mm = unit.hasel.contraction_at_tension(tension, hasel_kv);
    out.slider_slipped = out.clutch_stretch_mm != stick_pos;
    out.sleeve_saturated = out.clutch_stretch_mm > unit.clutch.max_stretch_mm();
    return out;
}

double joint_torque(double theta_rad, double theta_dot_rad_s, double left_tension_n,
                    double right_tension_n, const LimbSpec& limb,
                    const TendonSpec& tendon) {
    if (left_tension_n < 0 || right_tension_n < 0)
        throw std::invalid_argument("joint_torque: tensions must be non-negative");
    const double r_m = tendon.lever_radius_mm * kMmToM;
    double tau = r_m * (right_tension_n - left_tension_n);
    if (limb.gravity_mode == GravityMode::VerticalHanging)
        tau -= limb.mass_g * 1e-3 * kGravity * limb.com_distance_m() * std::sin(theta_rad);
    tau -= limb.damping_nms_per_rad * theta_dot_rad_s;
    return tau;
}

namespace {

struct SideStep {
    UnitInternal internal;
    double tension = 0.0;
    double capacity = 0.0;
};

SideStep step_side(const MuscleUnit& unit, const UnitInternal& prev, Side side,
                   double theta, const SideCommand& cmd, const TendonSpec& tendon,
                   double dt_s) {
    SideStep out;
    out.internal = prev;
    const double dt_ms = dt_s / kMsToS;

    out.internal.engagement = advance_engagement(prev.engagement, cmd.clutch_on,
                                                 dt_ms, unit.clutch);

    // The clutch keeps its drive voltage while releasing (charge decay is
    // what the release ramp models); fully released drops it to zero.
    if (cmd.clutch_on)
        out.internal.clutch_drive_v = cmd.clutch_v;
    else if (out.internal.engagement.mode == ClutchMode::Released)
        out.internal.clutch_drive_v = 0.0;
    out.capacity = capacity_fraction(out.internal.engagement) *
                   unit.clutch_force.holding_force(out.internal.clutch_drive_v);

    // First-order lag of the HASEL drive (oil redistribution time).
    const double alpha = 1.0 - std::exp(-dt_ms / unit.hasel.relaxation_time_ms());
    out.internal.effective_hasel_kv += alpha * (cmd.hasel_kv - out.internal.effective_hasel_kv);

    MuscleUnit u = unit;
    u.internal = out.internal;
    const double demanded = -tendon_excursion(theta, tendon.lever_radius_mm, side);
    const UnitTensionResult r =
        unit_tension(u, demanded, out.internal.effective_hasel_kv, out.capacity, tendon);

    const double slip_vel = (r.clutch_stretch_mm - prev.clutch_stretch_mm) / dt_s;
    auto& eng = out.internal.engagement;
    if (r.slider_slipped && eng.mode == ClutchMode::Locked)
        eng.mode = ClutchMode::Slipping;
    else if (!r.slider_slipped && eng.mode == ClutchMode::Slipping &&
             std::abs(slip_vel) < kSlipCaptureThresholdMmPerS)
        eng.mode = ClutchMode::Locked;
    if (eng.mode == ClutchMode::Locked || eng.mode == ClutchMode::Slipping)
        eng.lock_anchor_mm = r.clutch_stretch_mm;

    out.internal.clutch_stretch_mm = r.clutch_stretch_mm;
    out.internal.hasel_contraction_mm = r.hasel_contraction_mm;
    out.tension = r.tension_n;
    return out;
}

}  // namespace

StepOutput step(const JointState& state, const JointConfig& config,
                const JointCommands& commands, double dt_s) {
    if (dt_s <= 0 || dt_s > 1e-3)
        throw std::invalid_argument("step: dt must be in (0, 1 ms]");
    config.limb.validate();
    config.tendon.validate();

    const SideStep left = step_side(config.left, state.left, Side::Left, state.theta_rad,
                                    commands.left, config.tendon, dt_s);
    const SideStep right = step_side(config.right, state.right, Side::Right, state.theta_rad,
                                     commands.right, config.tendon, dt_s);

    const double tau = joint_torque(state.theta_rad, state.theta_dot_rad_s, left.tension,
                                    right.tension, config.limb, config.tendon);

    StepOutput out;
    out.state = state;
    out.state.left = left.internal;
    out.state.right = right.internal;
    out.tension_left_n = left.tension;
    out.tension_right_n = right.tension;
    out.capacity_left_n = left.capacity;
    out.capacity_right_n = right.capacity;

    out.state.theta_dot_rad_s += tau / config.limb.inertia_kg_m2() * dt_s;
    out.state.theta_rad += out.state.theta_dot_rad_s * dt_s;
    // Hard stop with inelastic velocity clamp.
    if (out.state.theta_rad > kPi) { out.state.theta_rad = kPi; out.state.theta_dot_rad_s = 0.0; }
    if (out.state.theta_rad < -kPi) { out.state.theta_rad = -kPi; out.state.theta_dot_rad_s = 0.0; }
    out.state.time_s += dt_s;

    if (!std::isfinite(out.state.theta_rad) || !std::isfinite(out.state.theta_dot_rad_s))
        throw SimulationError("step: non-finite joint state", out.state);
    return out;
}

Trace simulate(const JointState& initial, const JointConfig& config,
               const CommandSource& controller, double duration_s, double dt_s,
               double sample_period_s) {
    if (duration_s <= 0)
        throw std::invalid_argument("simulate: duration must be positive");
    if (sample_period_s < dt_s)
        throw std::invalid_argument("simulate: sample period must be >= dt");

    const long n_steps = std::lround(duration_s / dt_s);
    const long record_every = std::max<long>(1, std::lround(sample_period_s / dt_s));

    Trace trace;
    trace.reserve(static_cast<std::size_t>(n_steps / record_every + 2));

    JointState state = initial;
    double tension_left = 0.0, tension_right = 0.0;
    {
        // Tensions for the initial sample come from a zero-command-change probe.
        const JointCommands c0 = controller(0.0);
        MuscleUnit l = config.left;  l.internal = state.left;
        MuscleUnit r = config.right; r.internal = state.right;
        tension_left = unit_tension(l, -tendon_excursion(state.theta_rad, config.tendon.lever_radius_mm, Side::Left),
                                    state.left.effective_hasel_kv,
                                    capacity_fraction(state.left.engagement) *
                                        config.left.clutch_force.holding_force(state.left.clutch_drive_v),
                                    config.tendon).tension_n;
        tension_right = unit_tension(r, -tendon_excursion(state.theta_rad, config.tendon.lever_radius_mm, Side::Right),
                                     state.right.effective_hasel_kv,
                                     capacity_fraction(state.right.engagement) *
                                         config.right.clutch_force.holding_force(state.right.clutch_drive_v),
                                     config.tendon).tension_n;
        TraceRow row;
        row.time_s = state.time_s;
        row.theta_deg = rad_to_deg(state.theta_rad);
        row.theta_dot_rad_s = state.theta_dot_rad_s;
        row.tension_left_n = tension_left;
        row.tension_right_n = tension_right;
        row.v_hasel_left_kv = c0.left.hasel_kv;
        row.v_hasel_right_kv = c0.right.hasel_kv;
        row.v_clutch_left_v = c0.left.clutch_v;
        row.v_clutch_right_v = c0.right.clutch_v;
        row.mode_left = state.left.engagement.mode;
        row.mode_right = state.right.engagement.mode;
        trace.push_back(row);
    }

    for (long i = 0; i < n_steps; ++i) {
        const double t = state.time_s;
        const JointCommands cmds = controller(t);
        const StepOutput s = step(state, config, cmds, dt_s);
        state = s.state;
        if ((i + 1) % record_every == 0) {
            TraceRow row;
            row.time_s = state.time_s;
            row.theta_deg = rad_to_deg(state.theta_rad);
            row.theta_dot_rad_s = state.theta_dot_rad_s;
            row.tension_left_n = s.tension_left_n;
            row.tension_right_n = s.tension_right_n;
            row.v_hasel_left_kv = cmds.left.hasel_kv;
            row.v_hasel_right_kv = cmds.right.hasel_kv;
            row.v_clutch_left_v = cmds.left.clutch_v;
            row.v_clutch_right_v = cmds.right.clutch_v;
            row.mode_left = state.left.engagement.mode;
            row.mode_right = state.right.engagement.mode;
            trace.push_back(row);
        }
    }
    return trace;
}

double range_of_motion(const Trace& trace, int settle_cycles, double frequency_hz) {
    if (trace.empty())
        throw std::invalid_argument("range_of_motion: empty trace");
    if (frequency_hz <= 0)
        throw std::invalid_argument("range_of_motion: frequency must be positive");
    const double t_start = trace.front().time_s;
    const double t_end = trace.back().time_s;
    const double needed = (settle_cycles + 2) / frequency_hz;
    if (t_end - t_start + 1e-12 < needed)
        throw std::invalid_argument("range_of_motion: trace shorter than settle_cycles + 2 periods");
    const double window_start = t_start + settle_cycles / frequency_hz;
    double lo = 0, hi = 0;
    bool first = true;
    for (const auto& row : trace) {
        if (row.time_s < window_start) continue;
        if (first) { lo = hi = row.theta_deg; first = false; }
        lo = std::min(lo, row.theta_deg);
        hi = std::max(hi, row.theta_deg);
    }
    return hi - lo;
}

double mechanical_energy(const JointState& state, const JointConfig& config) {
    const double inertia = config.limb.inertia_kg_m2();
    double e = 0.5 * inertia * state.theta_dot_rad_s * state.theta_dot_rad_s;
    if (config.limb.gravity_mode == GravityMode::VerticalHanging)
        e += config.limb.mass_g * 1e-3 * kGravity * config.limb.com_distance_m() *
             (1.0 - std::cos(state.theta_rad));

    auto side_elastic = [&](const MuscleUnit& unit, const UnitInternal& in, Side side) {
        double el = 0.0;
        const double x = in.hasel_contraction_mm;
        if (x < 0) el += 0.5 * unit.hasel.shell_stiffness() * x * x * kMmToM;  // N*mm -> J via mm*1e-3
        const double rate = unit.sleeve.stiffness_n_per_mm(unit.clutch.stretchable_length_cm);
        el += 0.5 * rate * in.clutch_stretch_mm * in.clutch_stretch_mm * kMmToM;
        const double demanded = -tendon_excursion(state.theta_rad, config.tendon.lever_radius_mm, side);
        const double tendon_elong = demanded + x - in.clutch_stretch_mm;
        const double stretch = tendon_elong - config.tendon.slack_per_side_mm;
        el += tendon_stored_energy(stretch, config.tendon) * kMmToM;
        return el;
    };
    e += side_elastic(config.left, state.left, Side::Left);
    e += side_elastic(config.right, state.right, Side::Right);
    return e;
}

}  // namespace antjoint
