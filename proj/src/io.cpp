#include "antjoint/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace antjoint {

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trace_to_csv(const Trace& trace) {
    std::string out =
        "time_s,theta_deg,theta_dot_rad_s,tension_left_n,tension_right_n,"
        "v_hasel_left_kv,v_hasel_right_kv,v_clutch_left_v,v_clutch_right_v,"
        "mode_left,mode_right\n";
    for (const auto& r : trace) {
        out += format_number(r.time_s) + ',' + format_number(r.theta_deg) + ',' +
               format_number(r.theta_dot_rad_s) + ',' + format_number(r.tension_left_n) +
               ',' + format_number(r.tension_right_n) + ',' +
               format_number(r.v_hasel_left_kv) + ',' + format_number(r.v_hasel_right_kv) +
               ',' + format_number(r.v_clutch_left_v) + ',' +
               format_number(r.v_clutch_right_v) + ',' + to_string(r.mode_left) + ',' +
               to_string(r.mode_right) + '\n';
    }
    return out;
}

std::string schedule_to_csv(const std::vector<ScheduleRow>& rows) {
    std::string out =
        "time_s,v_hasel_left_kv,v_hasel_right_kv,v_clutch_left_v,v_clutch_right_v,"
        "state_left,state_right,brake\n";
    for (const auto& r : rows) {
        out += format_number(r.time_s) + ',' + format_number(r.v_hasel_left_kv) + ',' +
               format_number(r.v_hasel_right_kv) + ',' + format_number(r.v_clutch_left_v) +
               ',' + format_number(r.v_clutch_right_v) + ',' + to_string(r.left) + ',' +
               to_string(r.right) + ',' + (r.brake_segment ? "1" : "0") + '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') { fields.push_back(cur); cur.clear(); }
        else if (c != '\r') cur += c;
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("CSV parse error on line " + std::to_string(line_no) +
                                 ": bad number '" + s + "'");
    }
}

std::vector<std::vector<std::string>> read_csv(const std::string& text,
                                               const std::string& expected_header,
                                               std::size_t min_cols) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<std::string>> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (!header_seen) {
            std::string hdr;
            for (std::size_t i = 0; i < fields.size(); ++i)
                hdr += (i ? "," : "") + fields[i];
            if (hdr.substr(0, expected_header.size()) != expected_header)
                throw std::runtime_error("CSV schema mismatch on line " + std::to_string(line_no) +
                                         ": expected header '" + expected_header + "'");
            header_seen = true;
            continue;
        }
        if (fields.size() < min_cols)
            throw std::runtime_error("CSV parse error on line " + std::to_string(line_no) +
                                     ": expected at least " + std::to_string(min_cols) + " columns");
        fields.push_back(std::to_string(line_no));  // carry line number
        rows.push_back(std::move(fields));
    }
    if (!header_seen)
        throw std::runtime_error("CSV parse error on line 1: empty file");
    return rows;
}

}  // namespace

std::vector<ClutchAnchor> parse_clutch_csv(const std::string& text) {
    const auto rows = read_csv(text, "voltage,force", 2);
    if (rows.empty())
        throw std::runtime_error("CSV parse error on line 2: no data rows");
    std::vector<ClutchAnchor> anchors;
    for (const auto& r : rows) {
        const std::size_t line_no = std::stoul(r.back());
        anchors.push_back({parse_double(r[0], line_no), parse_double(r[1], line_no)});
    }
    return anchors;
}

std::vector<HaselCsvRow> parse_hasel_csv(const std::string& text) {
    const auto rows = read_csv(text, "voltage,displacement_mm,force_n", 3);
    if (rows.empty())
        throw std::runtime_error("CSV parse error on line 2: no data rows");
    std::vector<HaselCsvRow> out;
    for (const auto& r : rows) {
        const std::size_t line_no = std::stoul(r.back());
        out.push_back({parse_double(r[0], line_no), parse_double(r[1], line_no),
                       parse_double(r[2], line_no)});
    }
    return out;
}

std::vector<ScheduleRow> schedule_from_csv(const std::string& text) {
    const auto rows = read_csv(
        text, "time_s,v_hasel_left_kv,v_hasel_right_kv,v_clutch_left_v,v_clutch_right_v,state_left,state_right",
        7);
    std::vector<ScheduleRow> out;
    for (const auto& r : rows) {
        const std::size_t line_no = std::stoul(r.back());
        ScheduleRow row;
        row.time_s = parse_double(r[0], line_no);
        row.v_hasel_left_kv = parse_double(r[1], line_no);
        row.v_hasel_right_kv = parse_double(r[2], line_no);
        row.v_clutch_left_v = parse_double(r[3], line_no);
        row.v_clutch_right_v = parse_double(r[4], line_no);
        row.left = pair_state_from_string(r[5]);
        row.right = pair_state_from_string(r[6]);
        row.brake_segment = r.size() > 8 && r[7] == "1";
        out.push_back(row);
    }
    return out;
}

nlohmann::json clutch_model_to_json(const ClutchForceModel& model) {
    nlohmann::json anchors = nlohmann::json::array();
    double max_residual = 0.0;
    for (const auto& a : model.anchors()) {
        const double fitted = model.holding_force(a.voltage_v);
        max_residual = std::max(max_residual, std::abs(fitted - a.force_n) / a.force_n);
        anchors.push_back({{"voltage_v", a.voltage_v}, {"force_n", a.force_n},
                           {"fitted_force_n", fitted}});
    }
    return {{"coefficient_n_per_v_alpha", model.coefficient()},
            {"exponent_alpha", model.exponent()},
            {"friction_density_n_per_cm2", model.friction_density_at_reference()},
            {"anchors", anchors},
            {"max_relative_residual", max_residual}};
}

nlohmann::json hasel_model_to_json(const HaselModel& model) {
    nlohmann::json anchors = nlohmann::json::array();
    for (const auto& a : model.anchors())
        anchors.push_back({{"voltage_kv", a.voltage_kv},
                           {"blocked_force_n", a.blocked_force_n},
                           {"free_displacement_mm", a.free_displacement_mm}});
    return {{"anchors", anchors},
            {"shape_exponent_n", model.shape_exponent()},
            {"voltage_scaling_exponent", model.voltage_scaling_exponent()},
            {"shell_stiffness_n_per_mm", model.shell_stiffness()},
            {"relaxation_time_ms", model.relaxation_time_ms()},
            {"total_length_cm", model.spec().total_length_cm},
            {"width_cm", model.spec().width_cm}};
}

nlohmann::json design_report_to_json(const DesignReport& r) {
    return {{"effective_length_cm", r.effective_length_cm},
            {"clutch_length_theoretical_cm", r.clutch_length_theoretical_cm},
            {"clutch_length_cm", r.clutch_length_cm},
            {"clutch_area_theoretical_cm2", r.clutch_area_theoretical_cm2},
            {"clutch_area_cm2", r.clutch_area_cm2},
            {"sleeve_resisting_force_n", r.sleeve_resisting_force_n},
            {"adjusted_width_cm", r.adjusted_width_cm},
            {"strain_penalty_if_width_unchanged", r.strain_penalty_if_width_unchanged},
            {"applied_safety_factor", r.applied_safety_factor}};
}

std::string design_report_table(const DesignReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "quantity                       theoretical   applied\n"
                  "effective HASEL length [cm]    %11.4g\n"
                  "clutch length [cm]             %11.4g %9.4g\n"
                  "clutch area [cm^2]             %11.4g %9.4g\n"
                  "sleeve resisting force [N]     %11.4g\n"
                  "adjusted HASEL width [cm]      %11.4g\n"
                  "strain penalty (width kept)    %11.4g\n"
                  "safety factor                  %11.4g\n",
                  r.effective_length_cm, r.clutch_length_theoretical_cm, r.clutch_length_cm,
                  r.clutch_area_theoretical_cm2, r.clutch_area_cm2, r.sleeve_resisting_force_n,
                  r.adjusted_width_cm, r.strain_penalty_if_width_unchanged,
                  r.applied_safety_factor);
    return buf;
}

DesignInputs design_inputs_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> allowed = {
        "operating_force_n", "operating_strain", "hasel_length_cm", "hasel_width_cm",
        "friction_density_n_per_cm2", "sleeve_modulus_kpa", "sleeve_thickness_mm",
        "sleeve_layers", "configuration", "safety_factor"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw std::runtime_error("unknown key in design input: " + it.key());
    }
    DesignInputs in;
    in.operating_force_n = j.value("operating_force_n", in.operating_force_n);
    in.operating_strain = j.value("operating_strain", in.operating_strain);
    in.hasel_length_cm = j.value("hasel_length_cm", in.hasel_length_cm);
    in.hasel_width_cm = j.value("hasel_width_cm", in.hasel_width_cm);
    in.friction_density_n_per_cm2 =
        j.value("friction_density_n_per_cm2", in.friction_density_n_per_cm2);
    in.sleeve_modulus_kpa = j.value("sleeve_modulus_kpa", in.sleeve_modulus_kpa);
    in.sleeve_thickness_mm = j.value("sleeve_thickness_mm", in.sleeve_thickness_mm);
    in.sleeve_layers = j.value("sleeve_layers", in.sleeve_layers);
    if (j.contains("configuration")) {
        const std::string c = j["configuration"];
        if (c == "compact") in.configuration = Configuration::Compact;
        else if (c == "enhanced") in.configuration = Configuration::Enhanced;
        else throw std::runtime_error("configuration must be 'compact' or 'enhanced'");
    }
    in.safety_factor = j.value("safety_factor", in.safety_factor);
    return in;
}

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<SvgSeries>& series) {
    const double width = 800, height = 500;
    const double ml = 70, mr = 20, mt = 40, mb = 55;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) { x0 = x1 = x; y0 = y1 = y; first = false; }
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    const double plot_w = width - ml - mr, plot_h = height - mt - mb;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) { return mt + plot_h - (y - y0) / (y1 - y0) * plot_h; };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
                      "font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + title + "</text>\n";
    // axes
    svg += "<line x1=\"" + format_number(ml) + "\" y1=\"" + format_number(mt) + "\" x2=\"" +
           format_number(ml) + "\" y2=\"" + format_number(mt + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + format_number(ml) + "\" y1=\"" + format_number(mt + plot_h) +
           "\" x2=\"" + format_number(ml + plot_w) + "\" y2=\"" + format_number(mt + plot_h) +
           "\" stroke=\"black\"/>\n";
    // ticks
    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = x0 + (x1 - x0) * i / n_ticks;
        const double fy = y0 + (y1 - y0) * i / n_ticks;
        svg += "<text x=\"" + format_number(px(fx)) + "\" y=\"" + format_number(mt + plot_h + 18) +
               "\" text-anchor=\"middle\">" + format_number(fx) + "</text>\n";
        svg += "<text x=\"" + format_number(ml - 8) + "\" y=\"" + format_number(py(fy) + 4) +
               "\" text-anchor=\"end\">" + format_number(fy) + "</text>\n";
        svg += "<line x1=\"" + format_number(px(fx)) + "\" y1=\"" + format_number(mt + plot_h) +
               "\" x2=\"" + format_number(px(fx)) + "\" y2=\"" + format_number(mt + plot_h + 4) +
               "\" stroke=\"black\"/>\n";
    }
    svg += "<text x=\"" + format_number(ml + plot_w / 2) + "\" y=\"" + format_number(height - 12) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"18\" y=\"" + format_number(mt + plot_h / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           format_number(mt + plot_h / 2) + ")\">" + y_label + "</text>\n";

    int legend_i = 0;
    for (const auto& s : series) {
        std::string pts;
        for (const auto& [x, y] : s.points)
            pts += format_number(px(x)) + ',' + format_number(py(y)) + ' ';
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" +
               pts + "\"/>\n";
        const double ly = mt + 10 + 18 * legend_i++;
        svg += "<line x1=\"" + format_number(ml + plot_w - 150) + "\" y1=\"" + format_number(ly) +
               "\" x2=\"" + format_number(ml + plot_w - 120) + "\" y2=\"" + format_number(ly) +
               "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + format_number(ml + plot_w - 114) + "\" y=\"" + format_number(ly + 4) +
               "\">" + s.label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace antjoint
