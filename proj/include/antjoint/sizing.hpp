#pragma once

namespace antjoint {

enum class Configuration { Compact, Enhanced };

const char* to_string(Configuration c);

// Design-point inputs for sizing a clutch to a given HASEL muscle.
struct DesignInputs {
    double operating_force_n = 1.0;
    double operating_strain = 0.08;
    double hasel_length_cm = 16.0;
    double hasel_width_cm = 4.5;
    double friction_density_n_per_cm2 = 5.5;
    double sleeve_modulus_kpa = 100.0;
    double sleeve_thickness_mm = 1.0;
    int sleeve_layers = 1;
    Configuration configuration = Configuration::Enhanced;
    // Default reproduces the fabricated 5 cm electrode length from the
    // 0.0404 cm theoretical minimum.
    double safety_factor = 124.0;

    void validate() const;
};

struct DesignReport {
    double effective_length_cm = 0.0;
    double clutch_length_theoretical_cm = 0.0;
    double clutch_length_cm = 0.0;  // oversized by safety_factor
    double clutch_area_theoretical_cm2 = 0.0;
    double clutch_area_cm2 = 0.0;
    double sleeve_resisting_force_n = 0.0;
    double adjusted_width_cm = 0.0;
    double strain_penalty_if_width_unchanged = 0.0;
    double applied_safety_factor = 1.0;
};

// Effective muscle length for the chosen configuration: half length for
// Compact, full length for Enhanced.
double effective_hasel_length(Configuration config, double hasel_length_cm);

// Theoretical clutch length that transmits the operating force, cm.
double required_clutch_length(double force_n, double friction_density_n_per_cm2,
                              double width_cm);

// Elastic resisting force of the sleeve at the operating strain, N.
double sleeve_resisting_force(double strain, double effective_length_cm,
                              double clutch_length_cm, double modulus_kpa,
                              double width_cm, double thickness_mm, int layers);

// Width increase restoring the force margin eaten by the sleeve.
double adjusted_width(double width_cm, double resisting_force_n,
                      double operating_force_n);

DesignReport size_design(const DesignInputs& inputs);

}  // namespace antjoint
