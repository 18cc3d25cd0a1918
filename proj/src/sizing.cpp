#include "antjoint/sizing.hpp"

#include <stdexcept>

namespace antjoint {

const char* to_string(Configuration c) {
    return c == Configuration::Compact ? "compact" : "enhanced";
}

void DesignInputs::validate() const {
    if (operating_force_n <= 0 || hasel_length_cm <= 0 || hasel_width_cm <= 0 ||
        friction_density_n_per_cm2 <= 0 || sleeve_modulus_kpa <= 0 ||
        sleeve_thickness_mm <= 0)
        throw std::invalid_argument("DesignInputs: physical quantities must be positive");
    if (operating_strain <= 0 || operating_strain >= 1)
        throw std::invalid_argument("DesignInputs: operating_strain must be in (0,1)");
    if (sleeve_layers < 1)
        throw std::invalid_argument("DesignInputs: sleeve_layers must be >= 1");
    if (safety_factor < 1)
        throw std::invalid_argument("DesignInputs: safety_factor must be >= 1");
}

double effective_hasel_length(Configuration config, double hasel_length_cm) {
    if (hasel_length_cm <= 0)
        throw std::invalid_argument("effective_hasel_length: length must be positive");
    return config == Configuration::Compact ? 0.5 * hasel_length_cm : hasel_length_cm;
}

double required_clutch_length(double force_n, double friction_density_n_per_cm2,
                              double width_cm) {
    if (force_n <= 0 || friction_density_n_per_cm2 <= 0 || width_cm <= 0)
        throw std::invalid_argument("required_clutch_length: all inputs must be positive");
    return force_n / (friction_density_n_per_cm2 * width_cm);
}

double sleeve_resisting_force(double strain, double effective_length_cm,
                              double clutch_length_cm, double modulus_kpa,
                              double width_cm, double thickness_mm, int layers) {
    if (strain < 0)
        throw std::invalid_argument("sleeve_resisting_force: strain must be >= 0");
    if (effective_length_cm <= 0 || clutch_length_cm <= 0 || modulus_kpa <= 0 ||
        width_cm <= 0 || thickness_mm <= 0 || layers < 1)
        throw std::invalid_argument("sleeve_resisting_force: all inputs must be positive");
    // kPa -> N/cm^2 and mm -> cm keep the result in newtons.
    return strain * (effective_length_cm / clutch_length_cm) * (modulus_kpa * 0.1) *
           width_cm * (thickness_mm * 0.1) * layers;
}

double adjusted_width(double width_cm, double resisting_force_n,
                      double operating_force_n) {
    if (operating_force_n <= 0)
        throw std::invalid_argument("adjusted_width: operating force must be positive");
    return width_cm + resisting_force_n * width_cm / operating_force_n;
}

DesignReport size_design(const DesignInputs& in) {
    in.validate();
    DesignReport r;
    r.effective_length_cm = effective_hasel_length(in.configuration, in.hasel_length_cm);
    r.clutch_length_theoretical_cm = required_clutch_length(
        in.operating_force_n, in.friction_density_n_per_cm2, in.hasel_width_cm);
    r.clutch_length_cm = r.clutch_length_theoretical_cm * in.safety_factor;
    r.clutch_area_theoretical_cm2 = r.clutch_length_theoretical_cm * in.hasel_width_cm;
    r.clutch_area_cm2 = r.clutch_length_cm * in.hasel_width_cm;
    r.sleeve_resisting_force_n = sleeve_resisting_force(
        in.operating_strain, r.effective_length_cm, r.clutch_length_cm,
        in.sleeve_modulus_kpa, in.hasel_width_cm, in.sleeve_thickness_mm,
        in.sleeve_layers);
    r.adjusted_width_cm = adjusted_width(in.hasel_width_cm, r.sleeve_resisting_force_n,
                                         in.operating_force_n);
    r.strain_penalty_if_width_unchanged =
        in.operating_strain * r.sleeve_resisting_force_n /
        (in.operating_force_n + r.sleeve_resisting_force_n);
    r.applied_safety_factor = in.safety_factor;
    return r;
}

}  // namespace antjoint
