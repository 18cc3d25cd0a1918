// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass. argv[1] is the path to the command-line binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "antjoint/control.hpp"
#include "antjoint/io.hpp"
#include "antjoint/joint.hpp"
#include "antjoint/scenario.hpp"
#include "antjoint/units.hpp"

using namespace antjoint;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

bool within(double value, double target, double rel_tol) {
    return std::abs(value - target) <= rel_tol * std::abs(target);
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + stdout_file.string() + "\" 2>&1";
    return std::system(cmd.c_str());
}

// ---------------------------------------------------------------- criterion 1

void criterion_sizing(const std::string& cli, const fs::path& work) {
    const auto t0 = clock_type::now();
    bool pass = false;
    std::string detail;
    try {
        const fs::path input = work / "design.json";
        write_text_file(input.string(),
                        "{\"operating_force_n\": 1.0, \"friction_density_n_per_cm2\": 5.5, "
                        "\"hasel_width_cm\": 4.5, \"safety_factor\": 1.0}\n");
        const fs::path out = work / "size_out.txt";
        const int rc = run_cli(cli, "size --input \"" + input.string() + "\"", out);
        const std::string text = read_text_file(out.string());
        const std::size_t split = text.find("\n\n");
        const nlohmann::json j = nlohmann::json::parse(text.substr(0, split));
        const double lc = j.at("clutch_length_theoretical_cm");
        const double area = j.at("clutch_area_theoretical_cm2");
        const double dt = seconds_since(t0);
        pass = rc == 0 && within(lc, 0.0404, 0.05) && within(area, 0.182, 0.05) && dt < 1.0;
        std::ostringstream ss;
        ss << "L_c=" << lc << " cm, area=" << area << " cm^2, " << dt << " s";
        detail = ss.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(1, "sizing reproduces the worked clutch dimensions", pass, detail);
}

// ---------------------------------------------------------------- criterion 2

void criterion_clutch_law() {
    bool pass = false;
    std::string detail;
    try {
        const ClutchForceModel m =
            fit_clutch({{100.0, 4.25 * kGravity}, {150.0, 8.41 * kGravity}}, 15.0);
        const double f100 = m.holding_force(100.0);
        const double f150 = m.holding_force(150.0);
        const double p100 = m.friction_density(100.0, 15.0);
        const double p150 = m.friction_density(150.0, 15.0);
        pass = within(f100, 41.7, 0.02) && within(f150, 82.5, 0.02) &&
               within(p100, 2.8, 0.03) && within(p150, 5.6, 0.03);
        std::ostringstream ss;
        ss << "F(100V)=" << f100 << " N, F(150V)=" << f150 << " N, stress " << p100 << "/"
           << p150 << " N/cm^2";
        detail = ss.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(2, "clutch holding-force law and shear stress", pass, detail);
}

// ---------------------------------------------------------------- criterion 3

void criterion_hasel_anchors() {
    bool pass = false;
    std::string detail;
    try {
        const HaselModel m =
            fit_hasel({HaselAnchor{8.0, 16.3, 18.0}}, {{12.8, 8.0, 1.0}});
        const double fb = m.blocked_force(8.0);
        const double xf = m.free_displacement(8.0);
        const double f_strain = m.force(12.8, 8.0);
        pass = fb == 16.3 && xf == 18.0 && within(f_strain, 1.0, 0.05);
        std::ostringstream ss;
        ss << "F_b=" << fb << " N, x_f=" << xf << " mm, F(8% strain)=" << f_strain << " N";
        detail = ss.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(3, "HASEL anchors and calibrated shape exponent", pass, detail);
}

// ---------------------------------------------------------------- criterion 4

void criterion_slack_law() {
    const auto t0 = clock_type::now();
    bool pass = false;
    std::string detail;
    try {
        // Idealized limit: negligible sleeve stiffness, effectively rigid
        // locked clutches.
        Scenario s = default_scenario();
        s.sleeve.modulus_kpa = 1e-9;
        s.clutch_force = fit_clutch({{50.0, 5e7}, {100.0, 1e8}});
        const UtilizationResult slack = stroke_utilization(s, ScenarioMode::SlackOnly);
        const UtilizationResult clutch = stroke_utilization(s, ScenarioMode::ClutchAugmented);
        const double ratio = clutch.utilization / slack.utilization;
        const double dt = seconds_since(t0);
        pass = std::abs(slack.utilization - 0.5) <= 0.01 &&
               std::abs(clutch.utilization - 1.0) <= 0.01 &&
               std::abs(ratio - 2.0) <= 0.05 && dt < 10.0;
        std::ostringstream ss;
        ss << "slack=" << slack.utilization * 100 << "%, clutch=" << clutch.utilization * 100
           << "%, ratio=" << ratio << ", " << dt << " s";
        detail = ss.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(4, "50% slack law in the idealized quasi-static limit", pass, detail);
}

// ------------------------------------------------------- criteria 5 and 6

void criteria_sweep(const fs::path& work) {
    const auto t0 = clock_type::now();
    bool pass5 = false, pass6 = false;
    std::string detail5, detail6;
    try {
        const SweepSpec sweep = default_sweep();
        const SweepResult r = run_sweep(sweep, (work / "sweep_full").string());
        const double dt = seconds_since(t0);

        bool ordered = true;
        for (std::size_t i = 0; i < r.frequencies_hz.size(); ++i)
            if (!(r.rom_clutch_deg[i] > r.rom_slack_deg[i])) ordered = false;

        std::size_t idx_25 = 0;
        for (std::size_t i = 0; i < r.frequencies_hz.size(); ++i)
            if (std::abs(r.frequencies_hz[i] - 2.5) < 1e-9) idx_25 = i;
        const double gain_25 = r.rom_clutch_deg[idx_25] / r.rom_slack_deg[idx_25];
        pass5 = ordered && gain_25 >= 1.3 && dt < 300.0;
        {
            std::ostringstream ss;
            ss << (ordered ? "ordered at all 32 frequencies" : "ordering violated") << ", 2.5 Hz gain "
               << (gain_25 - 1.0) * 100 << "%, " << dt << " s";
            detail5 = ss.str();
        }

        // Linearized natural frequency from sleeve stiffness, gravity and
        // rod inertia. Only one sleeve is taut at a time (the agonist tendon
        // goes slack), so the ring stiffness is m g l/2 + k_sleeve r^2. The
        // alternating gait hands the limb across once per half period, so the
        // limb completes one full free oscillation per gait period and the
        // ROM peak sits at half the ring frequency; the factor folds into
        // k_eff as a division by four.
        const Scenario base = default_scenario();
        const double rate_n_per_m =
            base.sleeve.stiffness_n_per_mm(base.clutch.stretchable_length_cm) * 1e3;
        const double r_m = base.tendon.lever_radius_mm * kMmToM;
        const double k_grav = base.limb.mass_g * 1e-3 * kGravity * base.limb.com_distance_m();
        const double k_eff = (k_grav + rate_n_per_m * r_m * r_m) / 4.0;
        const double f_n = std::sqrt(k_eff / base.limb.inertia_kg_m2()) / (2.0 * kPi);

        const bool interior = r.peak_frequency_hz > r.frequencies_hz.front() &&
                              r.peak_frequency_hz < r.frequencies_hz.back();
        pass6 = interior && std::abs(r.peak_frequency_hz - f_n) <= 0.25 * f_n;
        {
            std::ostringstream ss;
            ss << "peak at " << r.peak_frequency_hz << " Hz, linearized f_n=" << f_n << " Hz"
               << (interior ? "" : ", peak on sweep boundary");
            detail6 = ss.str();
        }
    } catch (const std::exception& e) {
        detail5 = detail6 = e.what();
    }
    report(5, "clutch-augmented ROM exceeds slack-only across the sweep", pass5, detail5);
    report(6, "interior resonance peak near the linearized natural frequency", pass6, detail6);
}

// ---------------------------------------------------------------- criterion 7

void criterion_friction_cone() {
    bool pass = false;
    std::string detail;
    try {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> u01(0.0, 1.0);

        long total_steps = 0, bad_tension = 0, bad_cone = 0;
        const double dt = 1e-4;
        const long episodes = 20, steps_per_episode = 50000;  // 1e6 total

        for (long ep = 0; ep < episodes; ++ep) {
            Scenario s = default_scenario();
            s.gait.frequency_hz = 0.5 + 3.0 * u01(rng);
            s.gait.hasel_peak_kv = 2.0 + 6.0 * u01(rng);
            s.gait.clutch_amplitude_v = 50.0 + 50.0 * u01(rng);
            s.mode = ep % 4 == 0 ? ScenarioMode::SlackOnly : ScenarioMode::ClutchAugmented;
            const JointConfig config = make_joint_config(s);
            const CommandSource commands = scenario_command_source(s);
            const double rate =
                s.sleeve.stiffness_n_per_mm(s.clutch.stretchable_length_cm);

            JointState state = initial_joint_state(s);
            for (long i = 0; i < steps_per_episode; ++i) {
                const StepOutput out = step(state, config, commands(state.time_s), dt);
                ++total_steps;
                if (out.tension_left_n < 0.0 || out.tension_right_n < 0.0) ++bad_tension;
                if (out.tension_left_n >
                    out.capacity_left_n + rate * out.state.left.clutch_stretch_mm + 1e-6)
                    ++bad_cone;
                if (out.tension_right_n >
                    out.capacity_right_n + rate * out.state.right.clutch_stretch_mm + 1e-6)
                    ++bad_cone;
                state = out.state;
            }
        }
        pass = total_steps >= 1000000 && bad_tension == 0 && bad_cone == 0;
        std::ostringstream ss;
        ss << total_steps << " steps, " << bad_tension << " negative tensions, " << bad_cone
           << " cone violations";
        detail = ss.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(7, "tension unilaterality and clutch friction cone over randomized gaits", pass,
           detail);
}

// ---------------------------------------------------------------- criterion 8

void criterion_energy_decay() {
    bool pass = false;
    std::string detail;
    try {
        Scenario s = default_scenario();
        s.mode = ScenarioMode::SlackOnly;  // generous slack keeps tendons loose
        JointConfig config = make_joint_config(s);
        JointState state;
        state.theta_rad = deg_to_rad(30.0);

        const double dt = 5e-4;
        double prev_e = mechanical_energy(state, config);
        double max_rise = 0.0;
        for (long i = 1; i <= 50000; ++i) {  // 25 s
            state = step(state, config, JointCommands{}, dt).state;
            if (i % 20 == 0) {  // sample at 100 Hz
                const double e = mechanical_energy(state, config);
                max_rise = std::max(max_rise, e - prev_e);
                prev_e = e;
            }
        }
        const double final_deg = rad_to_deg(state.theta_rad);
        pass = max_rise <= 1e-4 && std::abs(final_deg) <= 0.5;
        std::ostringstream ss;
        ss << "max energy rise " << max_rise << " J, final angle " << final_deg << " deg";
        detail = ss.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(8, "passive pendulum dissipates energy and settles", pass, detail);
}

// ---------------------------------------------------------------- criterion 9

// Independent chain-elongation model built only from forward laws: the
// tendon inverse in closed form, the HASEL inverse by bisecting the public
// force curve, and the Coulomb return map for the slider.
double oracle_chain_elongation(const MuscleUnit& unit, const TendonSpec& tendon,
                               double tension, double kv, double capacity,
                               double stick_pos) {
    const double k = tendon.taut_stiffness_n_per_mm;
    const double us = tendon.smoothing_zone_mm;
    double stretch = 0.0;
    if (tension > 0.0)
        stretch = tension <= k * us / 2.0 ? std::sqrt(2.0 * us * tension / k)
                                          : tension / k + us / 2.0;

    const double rate = unit.sleeve.stiffness_n_per_mm(unit.clutch.stretchable_length_cm);
    double s = stick_pos;
    if (tension > rate * stick_pos + capacity) s = (tension - capacity) / rate;
    if (tension < rate * stick_pos - capacity) s = (tension + capacity) / rate;

    const double fb = unit.hasel.blocked_force(kv);
    double x;
    if (tension >= fb) {
        x = -(tension - fb) / unit.hasel.shell_stiffness();
    } else {
        double lo = 0.0, hi = unit.hasel.free_displacement(kv);
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            (unit.hasel.force(mid, kv) > tension ? lo : hi) = mid;
        }
        x = 0.5 * (lo + hi);
    }
    return tendon.slack_per_side_mm + stretch + s - x;
}

void criterion_series_balance() {
    bool pass = true;
    std::string detail;
    try {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 100 && pass; ++trial) {
            MuscleUnit unit;
            unit.hasel = HaselModel(HaselSpec{}, {HaselAnchor{8.0, 16.3, 18.0}},
                                    1.0 + 3.0 * u01(rng));
            unit.clutch_force = ClutchForceModel(0.0183, 1.68);
            unit.sleeve.modulus_kpa = 20.0 + 300.0 * u01(rng);
            unit.sleeve.layer_count = 1 + static_cast<int>(3.0 * u01(rng));
            unit.internal.clutch_stretch_mm = 10.0 * u01(rng);

            TendonSpec tendon;
            tendon.slack_per_side_mm = 4.0 * u01(rng);
            tendon.taut_stiffness_n_per_mm = 50.0 + 400.0 * u01(rng);

            const double kv = 8.0 * u01(rng);
            const double capacity = 80.0 * u01(rng);
            const double demanded = -12.0 + 30.0 * u01(rng);
            const double stick = unit.internal.clutch_stretch_mm;

            const double solved =
                unit_tension(unit, demanded, kv, capacity, tendon).tension_n;

            auto elong = [&](double T) {
                return oracle_chain_elongation(unit, tendon, T, kv, capacity, stick);
            };
            double oracle = 0.0;
            if (elong(0.0) < demanded) {
                double hi = 1.0;
                while (elong(hi) < demanded) hi *= 2.0;
                // two-stage dense grid over the bracket
                double lo = 0.0;
                for (int stage = 0; stage < 2; ++stage) {
                    const int n = 5000;
                    const double span = hi - lo;
                    int first_above = n;
                    for (int i = 0; i <= n; ++i) {
                        if (elong(lo + span * i / n) >= demanded) { first_above = i; break; }
                    }
                    const double new_lo = lo + span * std::max(0, first_above - 1) / n;
                    hi = lo + span * first_above / n;
                    lo = new_lo;
                }
                oracle = 0.5 * (lo + hi);
            }
            worst = std::max(worst, std::abs(solved - oracle));
            if (std::abs(solved - oracle) > 1e-3) pass = false;
        }
        std::ostringstream ss;
        ss << "worst deviation " << worst << " N over 100 randomized configurations";
        detail = ss.str();
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    report(9, "series balance matches the dense-grid tension oracle", pass, detail);
}

// --------------------------------------------------------------- criterion 10

void criterion_timing() {
    bool pass = false;
    std::string detail;
    try {
        const ClutchSpec spec;  // 5 ms lock, 15 ms release
        const double dt_ms = 0.05;  // default integrator step

        ClutchEngagementState st;
        double t_lock = 0.0;
        while (capacity_fraction(st) < 1.0) {
            st = advance_engagement(st, true, dt_ms, spec);
            t_lock += dt_ms;
            if (t_lock > 20.0) break;
        }
        double t_release = 0.0;
        while (capacity_fraction(st) > 0.0) {
            st = advance_engagement(st, false, dt_ms, spec);
            t_release += dt_ms;
            if (t_release > 40.0) break;
        }
        const bool times_ok = std::abs(t_lock - spec.lock_time_ms) <= dt_ms + 1e-9 &&
                              std::abs(t_release - spec.release_time_ms) <= dt_ms + 1e-9;

        // The default 20 ms-lead gait is clean.
        GaitParams good;
        const auto good_rows = sample_gait(good, spec, 2.0, 1e-3);
        const bool good_clean = validate_schedule(good_rows, spec).empty();

        // A zero-lead gait switches both channels together; the incoming
        // ramp lands inside the antagonist's release window.
        auto zero_lead_state = [](bool active) {
            return active ? PairState::S2_OnOn : PairState::S3_OffOff;
        };
        std::vector<ScheduleRow> bad_rows;
        const double period = 0.4;
        for (int i = 0; i <= 800; ++i) {
            const double t = i * 1e-3;
            const bool right_active = std::fmod(t, period) < period / 2.0;
            ScheduleRow row;
            row.time_s = t;
            row.right = zero_lead_state(right_active);
            row.left = zero_lead_state(!right_active);
            bad_rows.push_back(row);
        }
        const bool bad_flagged = !validate_schedule(bad_rows, spec).empty();

        pass = times_ok && good_clean && bad_flagged;
        std::ostringstream ss;
        ss << "lock " << t_lock << " ms, release " << t_release << " ms, default gait "
           << (good_clean ? "clean" : "flagged") << ", zero-lead gait "
           << (bad_flagged ? "flagged" : "missed");
        detail = ss.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(10, "engagement timing and schedule checker", pass, detail);
}

// --------------------------------------------------------------- criterion 11

void criterion_determinism(const std::string& cli, const fs::path& work) {
    bool pass = false;
    std::string detail;
    try {
        const fs::path config = work / "sweep.json";
        write_text_file(config.string(),
                        "{\"frequencies_hz\": [2.0, 2.5, 3.0], \"settle_cycles\": 1, "
                        "\"scenario\": {\"dt_s\": 2e-4}}\n");
        const fs::path out_a = work / "sweep_a", out_b = work / "sweep_b";
        const int rc_a = run_cli(cli, "sweep --config \"" + config.string() + "\" --out \"" +
                                          out_a.string() + "\"",
                                 work / "sweep_a.log");
        const int rc_b = run_cli(cli, "sweep --config \"" + config.string() + "\" --out \"" +
                                          out_b.string() + "\"",
                                 work / "sweep_b.log");
        bool identical = rc_a == 0 && rc_b == 0;
        for (const char* f : {"rom_vs_frequency.csv", "sweep_summary.json", "sweep.svg"}) {
            if (read_text_file((out_a / f).string()) != read_text_file((out_b / f).string()))
                identical = false;
        }
        pass = identical;
        detail = identical ? "all sweep outputs byte-identical across two runs"
                           : "outputs differ between runs";
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(11, "repeated sweep invocations are byte-identical", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli-binary>" << std::endl;
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path work = fs::temp_directory_path() / "antjoint_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    criterion_sizing(cli, work);
    criterion_clutch_law();
    criterion_hasel_anchors();
    criterion_slack_law();
    criteria_sweep(work);
    criterion_friction_cone();
    criterion_energy_decay();
    criterion_series_balance();
    criterion_timing();
    criterion_determinism(cli, work);

    fs::remove_all(work);
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
