#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "antjoint/io.hpp"
#include "antjoint/scenario.hpp"
#include "antjoint/sizing.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"antagonistic muscle-clutch joint toolkit"};
    app.require_subcommand(1);

    auto* size_cmd = app.add_subcommand("size", "evaluate the clutch sizing equations");
    std::string size_input;
    size_cmd->add_option("--input", size_input, "design input JSON file")->required();

    auto* sim_cmd = app.add_subcommand("simulate", "run one scenario and write trace files");
    std::string sim_config, sim_out = "out";
    sim_cmd->add_option("--config", sim_config, "scenario JSON file")->required();
    sim_cmd->add_option("--out", sim_out, "output directory");

    auto* sweep_cmd = app.add_subcommand("sweep", "frequency sweep of both scenario modes");
    std::string sweep_config, sweep_out = "out";
    sweep_cmd->add_option("--config", sweep_config, "sweep JSON file (defaults used if omitted)");
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    auto* fit_cmd = app.add_subcommand("fit", "fit actuator models from characterization CSVs");
    std::string fit_clutch_csv, fit_hasel_csv, fit_out;
    fit_cmd->add_option("--clutch", fit_clutch_csv, "clutch CSV (voltage,force)")->required();
    fit_cmd->add_option("--hasel", fit_hasel_csv, "HASEL CSV (voltage,displacement_mm,force_n)")
        ->required();
    fit_cmd->add_option("--out", fit_out, "output JSON file (stdout if omitted)");

    auto* check_cmd = app.add_subcommand("check-schedule", "check clutch/HASEL synchronization");
    std::string check_commands, check_config;
    check_cmd->add_option("--commands", check_commands, "command trace CSV to check");
    check_cmd->add_option("--config", check_config,
                          "scenario JSON supplying clutch timing (defaults if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    if (*size_cmd) {
        const antjoint::DesignInputs in = antjoint::design_inputs_from_json(load_json(size_input));
        const antjoint::DesignReport report = antjoint::size_design(in);
        std::cout << antjoint::design_report_to_json(report).dump(2) << "\n\n"
                  << antjoint::design_report_table(report);
        return 0;
    }
    if (*sim_cmd) {
        const antjoint::Scenario s = antjoint::scenario_from_json(load_json(sim_config));
        const antjoint::ScenarioSummary summary = antjoint::run_scenario(s, sim_out);
        std::cout << "scenario " << summary.name << " (" << antjoint::to_string(summary.mode)
                  << "): ROM " << antjoint::format_number(summary.rom_deg) << " deg, "
                  << summary.schedule_violations << " schedule violation(s)\n";
        return 0;
    }
    if (*sweep_cmd) {
        const antjoint::SweepSpec sw = sweep_config.empty()
                                           ? antjoint::default_sweep()
                                           : antjoint::sweep_from_json(load_json(sweep_config));
        const antjoint::SweepResult r = antjoint::run_sweep(sw, sweep_out);
        std::cout << "sweep complete: " << r.frequencies_hz.size() << " frequencies, peak ROM at "
                  << antjoint::format_number(r.peak_frequency_hz) << " Hz, "
                  << r.schedule_violations << " schedule violation(s)\n";
        return 0;
    }
    if (*fit_cmd) {
        const nlohmann::json j = antjoint::fit_models(antjoint::read_text_file(fit_clutch_csv),
                                                      antjoint::read_text_file(fit_hasel_csv));
        if (fit_out.empty())
            std::cout << j.dump(2) << "\n";
        else
            antjoint::write_text_file(fit_out, j.dump(2) + "\n");
        return 0;
    }
    if (*check_cmd) {
        antjoint::Scenario s = check_config.empty()
                                   ? antjoint::default_scenario()
                                   : antjoint::scenario_from_json(load_json(check_config));
        std::vector<antjoint::ScheduleRow> rows;
        if (!check_commands.empty())
            rows = antjoint::schedule_from_csv(antjoint::read_text_file(check_commands));
        else
            rows = antjoint::sample_gait(s.gait, s.clutch, 2.0 / s.gait.frequency_hz,
                                         s.sample_period_s);
        const auto violations = antjoint::validate_schedule(rows, s.clutch);
        for (const auto& v : violations)
            std::cout << "violation at t=" << antjoint::format_number(v.time_s) << " s ("
                      << antjoint::to_string(v.side) << "): " << v.message << "\n";
        std::cout << violations.size() << " violation(s)\n";
        return violations.empty() ? 0 : 1;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const antjoint::SimulationError& e) {
        std::cerr << "simulation failure: " << e.what()
                  << " (t=" << e.state().time_s << " s, theta=" << e.state().theta_rad << " rad)\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        // Config/schema problems are validation errors; the rest are runtime.
        const bool validation = msg.rfind("config", 0) == 0 ||
                                msg.find("CSV") != std::string::npos ||
                                msg.find("cannot open") != std::string::npos ||
                                msg.find("unknown key") != std::string::npos ||
                                msg.find("parse error") != std::string::npos;
        std::cerr << "error: " << msg << "\n";
        return validation ? 1 : 2;
    }
}
