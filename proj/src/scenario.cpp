#include "antjoint/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <map>
#include <stdexcept>

#include "antjoint/io.hpp"
#include "antjoint/units.hpp"

namespace antjoint {

const char* to_string(ScenarioMode m) {
    return m == ScenarioMode::SlackOnly ? "slack_only" : "clutch_augmented";
}

void Scenario::validate() const {
    limb.validate();
    tendon.validate();
    clutch.validate();
    sleeve.validate();
    gait.validate(clutch);
    if (duration_s <= 0)
        throw std::invalid_argument("Scenario: duration must be positive");
    if (dt_s <= 0 || dt_s > 1e-3)
        throw std::invalid_argument("Scenario: dt must be in (0, 1 ms]");
    if (sample_period_s < dt_s)
        throw std::invalid_argument("Scenario: sample period must be >= dt");
    if (settle_cycles < 0)
        throw std::invalid_argument("Scenario: settle_cycles must be >= 0");
}

Scenario default_scenario() {
    Scenario s;
    s.hasel = HaselModel(HaselSpec{}, {HaselAnchor{8.0, 16.3, 18.0}}, 2.25);
    s.clutch_force = fit_clutch({{100.0, 4.25 * kGravity}, {150.0, 8.41 * kGravity}},
                                ClutchSpec{}.electrode_overlap_cm2);
    return s;
}

JointConfig make_joint_config(const Scenario& s) {
    s.validate();
    JointConfig c;
    c.limb = s.limb;
    c.tendon = s.tendon;
    if (s.mode == ScenarioMode::SlackOnly)
        c.tendon.slack_per_side_mm = 0.5 * s.hasel.free_displacement(s.gait.hasel_peak_kv);
    else
        c.tendon.slack_per_side_mm = 0.0;
    MuscleUnit unit;
    unit.hasel = s.hasel;
    unit.clutch_force = s.clutch_force;
    unit.clutch = s.clutch;
    unit.sleeve = s.sleeve;
    unit.side = Side::Left;
    c.left = unit;
    unit.side = Side::Right;
    c.right = unit;
    return c;
}

JointState initial_joint_state(const Scenario& s) {
    JointState st;
    if (s.mode == ScenarioMode::SlackOnly) {
        const double v = std::min(s.gait.clutch_amplitude_v, s.gait.clutch_voltage_cap_v);
        for (UnitInternal* u : {&st.left, &st.right}) {
            u->engagement.mode = ClutchMode::Locked;
            u->engagement.transition_progress = 1.0;
            u->clutch_drive_v = v;
        }
    }
    return st;
}

CommandSource scenario_command_source(const Scenario& s) {
    s.validate();
    const CommandSource gait = gait_command_source(s.gait, s.clutch);
    if (s.mode == ScenarioMode::ClutchAugmented) return gait;
    const double v = std::min(s.gait.clutch_amplitude_v, s.gait.clutch_voltage_cap_v);
    return [gait, v](double t) {
        JointCommands c = gait(t);
        for (SideCommand* sc : {&c.left, &c.right}) {
            sc->clutch_on = true;
            sc->clutch_v = v;
        }
        return c;
    };
}

namespace {

std::vector<ScheduleRow> sample_scenario_schedule(const Scenario& s, double duration_s,
                                                  double sample_period_s) {
    std::vector<ScheduleRow> rows = sample_gait(s.gait, s.clutch, duration_s, sample_period_s);
    if (s.mode == ScenarioMode::SlackOnly) {
        const double v = std::min(s.gait.clutch_amplitude_v, s.gait.clutch_voltage_cap_v);
        const SquareAcWave ac{10.0, 1.0};
        for (auto& r : rows) {
            const double sign = waveform_value(ac, r.time_s);
            r.left = state_outputs(r.left).hasel_on ? PairState::S2_OnOn : PairState::S4_OffOn;
            r.right = state_outputs(r.right).hasel_on ? PairState::S2_OnOn : PairState::S4_OffOn;
            r.v_clutch_left_v = v * sign;
            r.v_clutch_right_v = v * sign;
        }
    }
    return rows;
}

}  // namespace

ScenarioSummary run_scenario(const Scenario& s, const std::string& output_dir) {
    s.validate();
    std::filesystem::create_directories(output_dir);

    const JointConfig config = make_joint_config(s);
    const Trace trace = simulate(initial_joint_state(s), config, scenario_command_source(s),
                                 s.duration_s, s.dt_s, s.sample_period_s);

    ScenarioSummary summary;
    summary.name = s.name;
    summary.mode = s.mode;
    summary.frequency_hz = s.gait.frequency_hz;
    summary.rom_deg = range_of_motion(trace, s.settle_cycles, s.gait.frequency_hz);

    const auto schedule = sample_scenario_schedule(s, s.duration_s, s.sample_period_s);
    // The slack-only baseline intentionally keeps both clutches on; only
    // the alternating schedule is subject to the synchronization rules.
    if (s.mode == ScenarioMode::ClutchAugmented)
        summary.schedule_violations = validate_schedule(schedule, s.clutch).size();

    write_text_file(output_dir + "/trace.csv", trace_to_csv(trace));
    write_text_file(output_dir + "/commands.csv", schedule_to_csv(schedule));

    nlohmann::json j = {{"name", summary.name},
                        {"mode", to_string(summary.mode)},
                        {"frequency_hz", summary.frequency_hz},
                        {"rom_deg", summary.rom_deg},
                        {"schedule_violations", summary.schedule_violations}};
    write_text_file(output_dir + "/summary.json", j.dump(2) + "\n");

    SvgSeries series{"theta", "#1f77b4", {}};
    series.points.reserve(trace.size());
    for (const auto& r : trace) series.points.emplace_back(r.time_s, r.theta_deg);
    write_text_file(output_dir + "/theta.svg",
                    render_line_chart("joint angle: " + s.name, "time [s]", "theta [deg]",
                                      {series}));
    return summary;
}

void SweepSpec::validate() const {
    base.validate();
    if (frequencies_hz.empty())
        throw std::invalid_argument("SweepSpec: frequency list must be non-empty");
    for (std::size_t i = 1; i < frequencies_hz.size(); ++i)
        if (frequencies_hz[i] <= frequencies_hz[i - 1])
            throw std::invalid_argument("SweepSpec: frequencies must be strictly increasing");
    if (frequencies_hz.front() <= 0)
        throw std::invalid_argument("SweepSpec: frequencies must be positive");
}

SweepSpec default_sweep() {
    SweepSpec sw;
    sw.base = default_scenario();
    for (int i = 0; ; ++i) {
        const double f = 0.5 + 0.1 * i;
        if (f > 3.6 + 1e-9) break;
        sw.frequencies_hz.push_back(f);
    }
    return sw;
}

SweepResult run_sweep(const SweepSpec& sweep, const std::string& output_dir) {
    sweep.validate();
    std::filesystem::create_directories(output_dir);

    SweepResult result;
    result.frequencies_hz = sweep.frequencies_hz;
    const std::size_t n = sweep.frequencies_hz.size();
    result.rom_slack_deg.resize(n);
    result.rom_clutch_deg.resize(n);

    auto run_point = [&](std::size_t i, ScenarioMode mode) {
        Scenario s = sweep.base;
        s.mode = mode;
        s.settle_cycles = sweep.settle_cycles;
        s.gait.frequency_hz = sweep.frequencies_hz[i];
        s.duration_s = (sweep.settle_cycles + 2.5) / s.gait.frequency_hz;
        const JointConfig config = make_joint_config(s);
        const Trace trace = simulate(initial_joint_state(s), config,
                                     scenario_command_source(s), s.duration_s, s.dt_s,
                                     s.sample_period_s);
        return range_of_motion(trace, s.settle_cycles, s.gait.frequency_hz);
    };

    // Sweep points are independent; run them in parallel, collect in order.
    std::vector<std::future<std::pair<double, double>>> futures;
    futures.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        futures.push_back(std::async(std::launch::async, [&, i] {
            return std::make_pair(run_point(i, ScenarioMode::SlackOnly),
                                  run_point(i, ScenarioMode::ClutchAugmented));
        }));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto [slack, clutch] = futures[i].get();
        result.rom_slack_deg[i] = slack;
        result.rom_clutch_deg[i] = clutch;
    }

    std::size_t peak_idx = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (result.rom_clutch_deg[i] > result.rom_clutch_deg[peak_idx]) peak_idx = i;
    result.peak_frequency_hz = result.frequencies_hz[peak_idx];

    for (std::size_t i = 0; i < n; ++i) {
        Scenario s = sweep.base;
        s.gait.frequency_hz = sweep.frequencies_hz[i];
        const auto rows = sample_gait(s.gait, s.clutch, 2.0 / s.gait.frequency_hz,
                                      s.sample_period_s);
        result.schedule_violations += validate_schedule(rows, s.clutch).size();
    }

    std::string csv = "frequency_hz,rom_slack_only_deg,rom_clutch_augmented_deg\n";
    for (std::size_t i = 0; i < n; ++i)
        csv += format_number(result.frequencies_hz[i]) + ',' +
               format_number(result.rom_slack_deg[i]) + ',' +
               format_number(result.rom_clutch_deg[i]) + '\n';
    write_text_file(output_dir + "/rom_vs_frequency.csv", csv);

    SvgSeries slack_series{"slack only", "#d62728", {}};
    SvgSeries clutch_series{"clutch augmented", "#1f77b4", {}};
    for (std::size_t i = 0; i < n; ++i) {
        slack_series.points.emplace_back(result.frequencies_hz[i], result.rom_slack_deg[i]);
        clutch_series.points.emplace_back(result.frequencies_hz[i], result.rom_clutch_deg[i]);
    }
    write_text_file(output_dir + "/sweep.svg",
                    render_line_chart("range of motion vs actuation frequency",
                                      "frequency [Hz]", "ROM [deg]",
                                      {slack_series, clutch_series}));

    nlohmann::json j = {{"peak_frequency_hz", result.peak_frequency_hz},
                        {"schedule_violations", result.schedule_violations},
                        {"frequencies_hz", result.frequencies_hz},
                        {"rom_slack_only_deg", result.rom_slack_deg},
                        {"rom_clutch_augmented_deg", result.rom_clutch_deg}};
    write_text_file(output_dir + "/sweep_summary.json", j.dump(2) + "\n");
    return result;
}

nlohmann::json fit_models(const std::string& clutch_csv_text,
                          const std::string& hasel_csv_text) {
    const auto clutch_anchors = parse_clutch_csv(clutch_csv_text);
    const ClutchForceModel clutch = fit_clutch(clutch_anchors);

    const auto rows = parse_hasel_csv(hasel_csv_text);
    std::map<double, HaselAnchor> by_voltage;
    std::vector<HaselCalibrationPoint> calibration;
    auto anchor_slot = [&](double voltage) -> HaselAnchor& {
        auto [it, inserted] = by_voltage.try_emplace(voltage);
        if (inserted) {
            // Sentinels so that a missing partner row is detectable below.
            it->second.voltage_kv = voltage;
            it->second.blocked_force_n = -1.0;
            it->second.free_displacement_mm = -1.0;
        }
        return it->second;
    };
    for (const auto& r : rows) {
        if (r.voltage_kv <= 0)
            throw std::runtime_error("HASEL CSV: voltage must be positive");
        if (r.displacement_mm == 0.0) {
            anchor_slot(r.voltage_kv).blocked_force_n = r.force_n;
        } else if (r.force_n == 0.0) {
            anchor_slot(r.voltage_kv).free_displacement_mm = r.displacement_mm;
        } else {
            calibration.push_back({r.displacement_mm, r.voltage_kv, r.force_n});
        }
    }
    std::vector<HaselAnchor> hasel_anchors;
    for (const auto& [v, a] : by_voltage) {
        if (a.blocked_force_n <= 0 || a.free_displacement_mm <= 0)
            throw std::runtime_error(
                "HASEL CSV: each anchor voltage needs a blocked-force row (displacement 0) "
                "and a free-displacement row (force 0)");
        hasel_anchors.push_back(a);
    }
    const HaselModel hasel = fit_hasel(hasel_anchors, calibration);

    nlohmann::json j = {{"clutch", clutch_model_to_json(clutch)},
                        {"hasel", hasel_model_to_json(hasel)}};
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& p : calibration) {
        residuals.push_back({{"contraction_mm", p.contraction_mm},
                             {"voltage_kv", p.voltage_kv},
                             {"measured_force_n", p.force_n},
                             {"fitted_force_n", hasel.force(p.contraction_mm, p.voltage_kv)}});
    }
    j["hasel"]["calibration"] = residuals;
    return j;
}

UtilizationResult stroke_utilization(const Scenario& scenario, ScenarioMode mode) {
    Scenario s = scenario;
    s.mode = mode;
    const JointConfig config = make_joint_config(s);
    const double peak = s.gait.hasel_peak_kv;
    const double clutch_v = std::min(s.gait.clutch_amplitude_v, s.gait.clutch_voltage_cap_v);
    const double full_cap = s.clutch_force.holding_force(clutch_v);

    // Agonist is the right unit at peak voltage; antagonist is passive.
    const double cap_right = full_cap;
    const double cap_left = mode == ScenarioMode::SlackOnly ? full_cap : 0.0;

    auto net_tension = [&](double theta) {
        MuscleUnit right = config.right;
        MuscleUnit left = config.left;
        const double r = config.tendon.lever_radius_mm;
        const double t_r = unit_tension(right, -tendon_excursion(theta, r, Side::Right),
                                        peak, cap_right, config.tendon).tension_n;
        const double t_l = unit_tension(left, -tendon_excursion(theta, r, Side::Left),
                                        0.0, cap_left, config.tendon).tension_n;
        return t_r - t_l;
    };

    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (net_tension(mid) > 1e-9 ? lo : hi) = mid;
    }

    UtilizationResult out;
    out.equilibrium_theta_rad = 0.5 * (lo + hi);
    out.free_contraction_mm = s.hasel.free_displacement(peak);
    out.utilization = config.tendon.lever_radius_mm * out.equilibrium_theta_rad /
                      out.free_contraction_mm;
    return out;
}

namespace {

void check_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                const std::string& context) {
    if (!j.is_object())
        throw std::runtime_error("config: '" + context + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw std::runtime_error("config: unknown key '" + it.key() + "' in " + context);
    }
}

GaitParams gait_from_json(const nlohmann::json& j, const GaitParams& defaults) {
    check_keys(j, {"frequency_hz", "hasel_peak_kv", "clutch_amplitude_v",
                   "clutch_lead_time_ms", "clutch_voltage_cap_v", "braking"}, "gait");
    GaitParams g = defaults;
    g.frequency_hz = j.value("frequency_hz", g.frequency_hz);
    g.hasel_peak_kv = j.value("hasel_peak_kv", g.hasel_peak_kv);
    g.clutch_amplitude_v = j.value("clutch_amplitude_v", g.clutch_amplitude_v);
    g.clutch_lead_time_ms = j.value("clutch_lead_time_ms", g.clutch_lead_time_ms);
    g.clutch_voltage_cap_v = j.value("clutch_voltage_cap_v", g.clutch_voltage_cap_v);
    if (j.contains("braking")) {
        check_keys(j["braking"], {"moving_side", "voltage_v"}, "gait.braking");
        BrakeSetting b;
        const std::string side = j["braking"].value("moving_side", "right");
        if (side == "left") b.moving_side = Side::Left;
        else if (side == "right") b.moving_side = Side::Right;
        else throw std::runtime_error("config: braking.moving_side must be 'left' or 'right'");
        b.voltage_v = j["braking"].value("voltage_v", b.voltage_v);
        g.braking = b;
    }
    return g;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
    check_keys(j, {"name", "mode", "duration_s", "dt_s", "sample_period_s", "settle_cycles",
                   "gait", "limb", "tendon", "hasel", "clutch", "sleeve"}, "scenario");
    Scenario s = default_scenario();
    s.name = j.value("name", s.name);
    if (j.contains("mode")) {
        const std::string m = j["mode"];
        if (m == "slack_only") s.mode = ScenarioMode::SlackOnly;
        else if (m == "clutch_augmented") s.mode = ScenarioMode::ClutchAugmented;
        else throw std::runtime_error("config: mode must be 'slack_only' or 'clutch_augmented'");
    }
    s.duration_s = j.value("duration_s", s.duration_s);
    s.dt_s = j.value("dt_s", s.dt_s);
    s.sample_period_s = j.value("sample_period_s", s.sample_period_s);
    s.settle_cycles = j.value("settle_cycles", s.settle_cycles);
    if (j.contains("gait")) s.gait = gait_from_json(j["gait"], s.gait);

    if (j.contains("limb")) {
        const auto& l = j["limb"];
        check_keys(l, {"length_cm", "mass_g", "damping_nms_per_rad", "gravity_mode"}, "limb");
        s.limb.length_cm = l.value("length_cm", s.limb.length_cm);
        s.limb.mass_g = l.value("mass_g", s.limb.mass_g);
        s.limb.damping_nms_per_rad = l.value("damping_nms_per_rad", s.limb.damping_nms_per_rad);
        if (l.contains("gravity_mode")) {
            const std::string m = l["gravity_mode"];
            if (m == "vertical_hanging") s.limb.gravity_mode = GravityMode::VerticalHanging;
            else if (m == "horizontal") s.limb.gravity_mode = GravityMode::Horizontal;
            else throw std::runtime_error("config: bad gravity_mode");
        }
    }
    if (j.contains("tendon")) {
        const auto& t = j["tendon"];
        check_keys(t, {"lever_radius_mm", "taut_stiffness_n_per_mm", "smoothing_zone_mm"},
                   "tendon");
        s.tendon.lever_radius_mm = t.value("lever_radius_mm", s.tendon.lever_radius_mm);
        s.tendon.taut_stiffness_n_per_mm =
            t.value("taut_stiffness_n_per_mm", s.tendon.taut_stiffness_n_per_mm);
        s.tendon.smoothing_zone_mm = t.value("smoothing_zone_mm", s.tendon.smoothing_zone_mm);
    }
    if (j.contains("hasel")) {
        const auto& h = j["hasel"];
        check_keys(h, {"pouch_count", "pouch_length_cm", "width_cm", "total_length_cm", "mass_g",
                       "rated_voltage_kv", "anchors", "shape_exponent_n",
                       "voltage_scaling_exponent", "shell_stiffness_n_per_mm",
                       "relaxation_time_ms"}, "hasel");
        HaselSpec spec = s.hasel.spec();
        spec.pouch_count = h.value("pouch_count", spec.pouch_count);
        spec.pouch_length_cm = h.value("pouch_length_cm", spec.pouch_length_cm);
        spec.width_cm = h.value("width_cm", spec.width_cm);
        spec.total_length_cm = h.value("total_length_cm", spec.pouch_count * spec.pouch_length_cm);
        spec.mass_g = h.value("mass_g", spec.mass_g);
        spec.rated_voltage_kv = h.value("rated_voltage_kv", spec.rated_voltage_kv);
        std::vector<HaselAnchor> anchors = s.hasel.anchors();
        if (h.contains("anchors")) {
            anchors.clear();
            for (const auto& a : h["anchors"]) {
                check_keys(a, {"voltage_kv", "blocked_force_n", "free_displacement_mm"},
                           "hasel.anchors[]");
                anchors.push_back({a.at("voltage_kv"), a.at("blocked_force_n"),
                                   a.at("free_displacement_mm")});
            }
        }
        s.hasel = HaselModel(spec, anchors,
                             h.value("shape_exponent_n", s.hasel.shape_exponent()),
                             h.value("voltage_scaling_exponent", s.hasel.voltage_scaling_exponent()),
                             h.value("shell_stiffness_n_per_mm", s.hasel.shell_stiffness()),
                             h.value("relaxation_time_ms", s.hasel.relaxation_time_ms()));
    }
    if (j.contains("clutch")) {
        const auto& c = j["clutch"];
        check_keys(c, {"electrode_overlap_cm2", "width_cm", "packaged_length_cm",
                       "stretchable_length_cm", "max_stretch_fraction", "mass_g", "lock_time_ms",
                       "release_time_ms", "force_anchors"}, "clutch");
        s.clutch.electrode_overlap_cm2 = c.value("electrode_overlap_cm2", s.clutch.electrode_overlap_cm2);
        s.clutch.width_cm = c.value("width_cm", s.clutch.width_cm);
        s.clutch.packaged_length_cm = c.value("packaged_length_cm", s.clutch.packaged_length_cm);
        s.clutch.stretchable_length_cm =
            c.value("stretchable_length_cm", s.clutch.stretchable_length_cm);
        s.clutch.max_stretch_fraction = c.value("max_stretch_fraction", s.clutch.max_stretch_fraction);
        s.clutch.mass_g = c.value("mass_g", s.clutch.mass_g);
        s.clutch.lock_time_ms = c.value("lock_time_ms", s.clutch.lock_time_ms);
        s.clutch.release_time_ms = c.value("release_time_ms", s.clutch.release_time_ms);
        if (c.contains("force_anchors")) {
            std::vector<ClutchAnchor> anchors;
            for (const auto& a : c["force_anchors"]) {
                check_keys(a, {"voltage_v", "force_n"}, "clutch.force_anchors[]");
                anchors.push_back({a.at("voltage_v"), a.at("force_n")});
            }
            s.clutch_force = fit_clutch(anchors, s.clutch.electrode_overlap_cm2);
        }
    }
    if (j.contains("sleeve")) {
        const auto& sl = j["sleeve"];
        check_keys(sl, {"modulus_kpa", "thickness_mm", "layer_count", "width_cm", "rest_length_cm"},
                   "sleeve");
        s.sleeve.modulus_kpa = sl.value("modulus_kpa", s.sleeve.modulus_kpa);
        s.sleeve.thickness_mm = sl.value("thickness_mm", s.sleeve.thickness_mm);
        s.sleeve.layer_count = sl.value("layer_count", s.sleeve.layer_count);
        s.sleeve.width_cm = sl.value("width_cm", s.sleeve.width_cm);
        s.sleeve.rest_length_cm = sl.value("rest_length_cm", s.sleeve.rest_length_cm);
    }
    s.validate();
    return s;
}

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j = {{"name", s.name},
                        {"mode", to_string(s.mode)},
                        {"duration_s", s.duration_s},
                        {"dt_s", s.dt_s},
                        {"sample_period_s", s.sample_period_s},
                        {"settle_cycles", s.settle_cycles}};
    j["gait"] = {{"frequency_hz", s.gait.frequency_hz},
                 {"hasel_peak_kv", s.gait.hasel_peak_kv},
                 {"clutch_amplitude_v", s.gait.clutch_amplitude_v},
                 {"clutch_lead_time_ms", s.gait.clutch_lead_time_ms},
                 {"clutch_voltage_cap_v", s.gait.clutch_voltage_cap_v}};
    j["limb"] = {{"length_cm", s.limb.length_cm},
                 {"mass_g", s.limb.mass_g},
                 {"damping_nms_per_rad", s.limb.damping_nms_per_rad},
                 {"gravity_mode", to_string(s.limb.gravity_mode)}};
    j["tendon"] = {{"lever_radius_mm", s.tendon.lever_radius_mm},
                   {"taut_stiffness_n_per_mm", s.tendon.taut_stiffness_n_per_mm},
                   {"smoothing_zone_mm", s.tendon.smoothing_zone_mm}};
    j["hasel"] = hasel_model_to_json(s.hasel);
    j["clutch"] = {{"electrode_overlap_cm2", s.clutch.electrode_overlap_cm2},
                   {"width_cm", s.clutch.width_cm},
                   {"packaged_length_cm", s.clutch.packaged_length_cm},
                   {"stretchable_length_cm", s.clutch.stretchable_length_cm},
                   {"max_stretch_fraction", s.clutch.max_stretch_fraction},
                   {"mass_g", s.clutch.mass_g},
                   {"lock_time_ms", s.clutch.lock_time_ms},
                   {"release_time_ms", s.clutch.release_time_ms},
                   {"force", clutch_model_to_json(s.clutch_force)}};
    j["sleeve"] = {{"modulus_kpa", s.sleeve.modulus_kpa},
                   {"thickness_mm", s.sleeve.thickness_mm},
                   {"layer_count", s.sleeve.layer_count},
                   {"width_cm", s.sleeve.width_cm},
                   {"rest_length_cm", s.sleeve.rest_length_cm}};
    return j;
}

SweepSpec sweep_from_json(const nlohmann::json& j) {
    check_keys(j, {"scenario", "frequencies_hz", "frequency_range", "settle_cycles"}, "sweep");
    SweepSpec sw = default_sweep();
    if (j.contains("scenario")) sw.base = scenario_from_json(j["scenario"]);
    if (j.contains("frequencies_hz")) {
        sw.frequencies_hz = j["frequencies_hz"].get<std::vector<double>>();
    } else if (j.contains("frequency_range")) {
        const auto& r = j["frequency_range"];
        check_keys(r, {"start_hz", "stop_hz", "step_hz"}, "sweep.frequency_range");
        const double start = r.at("start_hz"), stop = r.at("stop_hz"), step = r.at("step_hz");
        if (step <= 0) throw std::runtime_error("config: frequency step must be positive");
        sw.frequencies_hz.clear();
        for (double f = start; f <= stop + 1e-9; f += step) sw.frequencies_hz.push_back(f);
    }
    sw.settle_cycles = j.value("settle_cycles", sw.settle_cycles);
    sw.validate();
    return sw;
}

}  // namespace antjoint
