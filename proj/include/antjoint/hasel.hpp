#pragma once

#include <vector>

namespace antjoint {

// Geometry and rating of one HASEL muscle pack (series chain of pouches).
struct HaselSpec {
    int pouch_count = 8;
    double pouch_length_cm = 2.0;
    double width_cm = 4.5;
    double total_length_cm = 16.0;
    double mass_g = 13.7;
    double rated_voltage_kv = 8.0;

    void validate() const;  // throws std::invalid_argument
};

// One measured endpoint pair of the force-displacement curve at a voltage.
struct HaselAnchor {
    double voltage_kv = 8.0;
    double blocked_force_n = 16.3;
    double free_displacement_mm = 18.0;
};

// Voltage-parametrized tension/contraction law of one muscle pack.
//
// At fixed voltage the active curve is F = F_b(V) * (1 - x/x_f(V))^n on
// 0 <= x <= x_f(V), zero beyond free displacement, and a stiff passive
// shell spring resists extension past rest length (x < 0). Tension only.
class HaselModel {
public:
    HaselModel() = default;
    HaselModel(HaselSpec spec, std::vector<HaselAnchor> anchors,
               double shape_exponent_n = 1.0,
               double voltage_scaling_exponent = 2.0,
               double shell_stiffness_n_per_mm = 100.0,
               double relaxation_time_ms = 30.0);

    // Force at zero displacement. Interpolates anchors linearly; below the
    // lowest anchor scales as (V/V_anchor)^voltage_scaling_exponent.
    double blocked_force(double voltage_kv) const;

    // Displacement at zero load, same interpolation scheme.
    double free_displacement(double voltage_kv) const;

    // Tension at contraction x (mm, positive = shortening from rest).
    double force(double contraction_mm, double voltage_kv) const;

    // Inverse of the tension law: quasi-static contraction under tension.
    // Monotone non-increasing in tension; used by the series-chain solver.
    double contraction_at_tension(double tension_n, double voltage_kv) const;

    double free_strain(double voltage_kv) const;  // x_f / L_h, dimensionless

    const HaselSpec& spec() const { return spec_; }
    const std::vector<HaselAnchor>& anchors() const { return anchors_; }
    double shape_exponent() const { return shape_exponent_n_; }
    double voltage_scaling_exponent() const { return voltage_scaling_exponent_; }
    double shell_stiffness() const { return shell_stiffness_n_per_mm_; }
    double relaxation_time_ms() const { return relaxation_time_ms_; }

private:
    void check_voltage(double voltage_kv) const;

    HaselSpec spec_{};
    std::vector<HaselAnchor> anchors_{HaselAnchor{}};
    double shape_exponent_n_ = 1.0;
    double voltage_scaling_exponent_ = 2.0;
    double shell_stiffness_n_per_mm_ = 100.0;
    double relaxation_time_ms_ = 30.0;
};

// One calibration sample on the force-displacement surface.
struct HaselCalibrationPoint {
    double contraction_mm = 0.0;
    double voltage_kv = 0.0;
    double force_n = 0.0;
};

// Least-squares choice of the shape exponent n through the calibration
// points. With no calibration points n stays at the linear default of 1.
HaselModel fit_hasel(const std::vector<HaselAnchor>& anchors,
                     const std::vector<HaselCalibrationPoint>& calibration,
                     const HaselSpec& spec = HaselSpec{});

}  // namespace antjoint
