#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "antjoint/control.hpp"
#include "antjoint/joint.hpp"

namespace antjoint {

enum class ScenarioMode { SlackOnly, ClutchAugmented };

const char* to_string(ScenarioMode m);

// A complete runnable experiment: joint, actuator models, gait and
// integration settings. SlackOnly keeps both clutches permanently locked
// and sets the tendon slack to half the muscle stroke (the best a
// clutch-less antagonistic pair can do); ClutchAugmented runs with zero
// slack and the alternating clutch schedule.
struct Scenario {
    std::string name = "default";
    ScenarioMode mode = ScenarioMode::ClutchAugmented;
    GaitParams gait;
    LimbSpec limb;
    TendonSpec tendon;
    HaselModel hasel;
    ClutchForceModel clutch_force;
    ClutchSpec clutch;
    SleeveSpec sleeve;
    double duration_s = 4.0;
    double dt_s = 5e-5;
    double sample_period_s = 1e-3;
    int settle_cycles = 5;

    void validate() const;
};

Scenario default_scenario();

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

// Joint configuration with the mode-specific slack applied.
JointConfig make_joint_config(const Scenario& s);
JointState initial_joint_state(const Scenario& s);
CommandSource scenario_command_source(const Scenario& s);

struct ScenarioSummary {
    std::string name;
    ScenarioMode mode = ScenarioMode::ClutchAugmented;
    double frequency_hz = 0.0;
    double rom_deg = 0.0;
    std::size_t schedule_violations = 0;
};

// Runs the scenario and writes trace.csv, commands.csv, summary.json and
// theta.svg into output_dir.
ScenarioSummary run_scenario(const Scenario& s, const std::string& output_dir);

struct SweepSpec {
    Scenario base;
    std::vector<double> frequencies_hz;  // default 0.5 .. 3.6 step 0.1
    int settle_cycles = 5;

    void validate() const;
};

SweepSpec default_sweep();
SweepSpec sweep_from_json(const nlohmann::json& j);

struct SweepResult {
    std::vector<double> frequencies_hz;
    std::vector<double> rom_slack_deg;
    std::vector<double> rom_clutch_deg;
    double peak_frequency_hz = 0.0;  // argmax of the clutch-augmented ROM
    std::size_t schedule_violations = 0;
};

SweepResult run_sweep(const SweepSpec& sweep, const std::string& output_dir);

// Fitting front end: characterization CSVs in, fitted model JSON out.
nlohmann::json fit_models(const std::string& clutch_csv_text,
                          const std::string& hasel_csv_text);

// Quasi-static stroke utilization: fraction of the free muscle stroke the
// agonist can convert into joint travel before the antagonist blocks.
struct UtilizationResult {
    double utilization = 0.0;          // lever travel / free contraction
    double equilibrium_theta_rad = 0.0;
    double free_contraction_mm = 0.0;
};

UtilizationResult stroke_utilization(const Scenario& s, ScenarioMode mode);

}  // namespace antjoint
