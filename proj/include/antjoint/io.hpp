#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "antjoint/clutch.hpp"
#include "antjoint/control.hpp"
#include "antjoint/hasel.hpp"
#include "antjoint/joint.hpp"
#include "antjoint/sizing.hpp"

namespace antjoint {

// Fixed-precision number formatting so that repeated runs emit
// byte-identical files.
std::string format_number(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string trace_to_csv(const Trace& trace);
std::string schedule_to_csv(const std::vector<ScheduleRow>& rows);
std::vector<ScheduleRow> schedule_from_csv(const std::string& text);

// Characterization CSVs: `voltage,force` for the clutch and
// `voltage,displacement_mm,force_n` for the HASEL. Errors carry the
// offending line number.
std::vector<ClutchAnchor> parse_clutch_csv(const std::string& text);

struct HaselCsvRow {
    double voltage_kv = 0.0;
    double displacement_mm = 0.0;
    double force_n = 0.0;
};
std::vector<HaselCsvRow> parse_hasel_csv(const std::string& text);

nlohmann::json clutch_model_to_json(const ClutchForceModel& model);
nlohmann::json hasel_model_to_json(const HaselModel& model);
nlohmann::json design_report_to_json(const DesignReport& report);
std::string design_report_table(const DesignReport& report);

DesignInputs design_inputs_from_json(const nlohmann::json& j);

// Minimal self-contained SVG line chart (axes, series, legend).
struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<SvgSeries>& series);

}  // namespace antjoint
