#pragma once

#include <utility>
#include <vector>

namespace antjoint {

// Geometry, packaging and switching times of one electrostatic clutch.
struct ClutchSpec {
    double electrode_overlap_cm2 = 15.0;
    double width_cm = 5.0;
    double packaged_length_cm = 9.0;
    double stretchable_length_cm = 9.0;
    double max_stretch_fraction = 0.44;
    double mass_g = 4.4;
    double lock_time_ms = 5.0;
    double release_time_ms = 15.0;

    void validate() const;
    double max_stretch_mm() const { return max_stretch_fraction * stretchable_length_cm * 10.0; }
};

struct ClutchAnchor {
    double voltage_v = 0.0;
    double force_n = 0.0;
};

// Voltage-dependent holding-force law, F = k * V^alpha.
class ClutchForceModel {
public:
    ClutchForceModel() = default;
    ClutchForceModel(double coefficient_k, double exponent_alpha,
                     std::vector<ClutchAnchor> anchors = {},
                     double reference_area_cm2 = 15.0);

    double holding_force(double voltage_v) const;  // N, throws on V < 0

    // Holding force per unit electrode overlap at the given voltage.
    double friction_density(double voltage_v, double area_cm2) const;

    double coefficient() const { return coefficient_k_; }
    double exponent() const { return exponent_alpha_; }
    const std::vector<ClutchAnchor>& anchors() const { return anchors_; }
    double friction_density_at_reference() const { return friction_density_p_c_; }

private:
    double coefficient_k_ = 0.0;
    double exponent_alpha_ = 1.0;
    std::vector<ClutchAnchor> anchors_;
    double friction_density_p_c_ = 0.0;  // N/cm^2 at the highest anchor voltage
};

// Power-law fit through measured (voltage, holding force) anchors. Two
// anchors give the closed-form exponent; three or more are fitted by
// least squares in log-log space with a 2% max-residual gate.
ClutchForceModel fit_clutch(const std::vector<ClutchAnchor>& anchors,
                            double reference_area_cm2 = 15.0);

// Elastic textile packaging around the clutch electrodes.
struct SleeveSpec {
    double modulus_kpa = 100.0;
    double thickness_mm = 1.0;
    int layer_count = 3;
    double width_cm = 4.5;
    double rest_length_cm = 9.0;

    void validate() const;
    // Spring rate of the sleeve over a given stretchable length, N/mm.
    double stiffness_n_per_mm(double stretchable_length_cm) const;
};

struct SleeveForce {
    double force_n = 0.0;
    bool saturated = false;  // stretch beyond the rated max stretch
};

// Linear elastic resisting force of the sleeve at a given stretch.
SleeveForce sleeve_force(const SleeveSpec& sleeve, double stretch_mm,
                         double stretchable_length_cm,
                         double max_stretch_fraction = 1.0);

enum class ClutchMode { Released, Engaging, Locked, Slipping, Releasing };

const char* to_string(ClutchMode m);

struct ClutchEngagementState {
    ClutchMode mode = ClutchMode::Released;
    double lock_anchor_mm = 0.0;       // slider position captured at lock
    double transition_progress = 0.0;  // in [0,1] during Engaging/Releasing
};

// Advance the engagement mode machine by dt. Capacity ramps linearly over
// lock_time while engaging and release_time while releasing.
ClutchEngagementState advance_engagement(const ClutchEngagementState& state,
                                         bool commanded_on, double dt_ms,
                                         const ClutchSpec& spec);

// Fraction of the full holding force currently available, in [0,1].
double capacity_fraction(const ClutchEngagementState& state);

struct ClutchTransmitResult {
    double transmitted_force_n = 0.0;
    ClutchEngagementState state;
    bool clamped_input = false;  // an input was clamped to its physical range
};

// One time-step of the stick-slip clutch element. sleeve_tension_n is the
// elastic sleeve force at the current stretch; the slider adds Coulomb
// capacity on top of it, with kinetic equal to static friction.
ClutchTransmitResult clutch_transmit(const ClutchEngagementState& state,
                                     bool commanded_on, double voltage_v,
                                     double applied_tension_n,
                                     double slip_velocity_mm_s, double dt_ms,
                                     const ClutchForceModel& model,
                                     const ClutchSpec& spec,
                                     double sleeve_tension_n = 0.0);

inline constexpr double kSlipCaptureThresholdMmPerS = 0.1;

}  // namespace antjoint
