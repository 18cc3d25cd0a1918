#include "antjoint/clutch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antjoint {

void ClutchSpec::validate() const {
    if (electrode_overlap_cm2 <= 0 || width_cm <= 0 || packaged_length_cm <= 0 ||
        stretchable_length_cm <= 0 || mass_g <= 0)
        throw std::invalid_argument("ClutchSpec: geometry and mass must be positive");
    if (max_stretch_fraction <= 0 || max_stretch_fraction > 1)
        throw std::invalid_argument("ClutchSpec: max_stretch_fraction must be in (0,1]");
    if (lock_time_ms <= 0 || release_time_ms <= 0)
        throw std::invalid_argument("ClutchSpec: switching times must be positive");
}

ClutchForceModel::ClutchForceModel(double coefficient_k, double exponent_alpha,
                                   std::vector<ClutchAnchor> anchors,
                                   double reference_area_cm2)
    : coefficient_k_(coefficient_k),
      exponent_alpha_(exponent_alpha),
      anchors_(std::move(anchors)) {
    if (coefficient_k_ <= 0 || exponent_alpha_ <= 0)
        throw std::invalid_argument("ClutchForceModel: k and alpha must be positive");
    if (!anchors_.empty()) {
        const double v_ref = std::max_element(anchors_.begin(), anchors_.end(),
                                              [](auto& a, auto& b) { return a.voltage_v < b.voltage_v; })
                                 ->voltage_v;
        friction_density_p_c_ = holding_force(v_ref) / reference_area_cm2;
    }
}

double ClutchForceModel::holding_force(double voltage_v) const {
    if (voltage_v < 0)
        throw std::out_of_range("ClutchForceModel: voltage must be non-negative");
    if (voltage_v == 0.0) return 0.0;
    return coefficient_k_ * std::pow(voltage_v, exponent_alpha_);
}

double ClutchForceModel::friction_density(double voltage_v, double area_cm2) const {
    if (area_cm2 <= 0)
        throw std::invalid_argument("ClutchForceModel: area must be positive");
    return holding_force(voltage_v) / area_cm2;
}

ClutchForceModel fit_clutch(const std::vector<ClutchAnchor>& anchors,
                            double reference_area_cm2) {
    if (anchors.size() < 2)
        throw std::invalid_argument("fit_clutch: at least two anchors required");
    for (const auto& a : anchors) {
        if (a.voltage_v <= 0 || a.force_n <= 0)
            throw std::invalid_argument("fit_clutch: anchors must have positive voltage and force");
    }
    for (std::size_t i = 0; i < anchors.size(); ++i)
        for (std::size_t j = i + 1; j < anchors.size(); ++j)
            if (anchors[i].voltage_v == anchors[j].voltage_v)
                throw std::invalid_argument("fit_clutch: coincident anchor voltages");

    double alpha, k;
    if (anchors.size() == 2) {
        alpha = std::log(anchors[1].force_n / anchors[0].force_n) /
                std::log(anchors[1].voltage_v / anchors[0].voltage_v);
        k = anchors[0].force_n / std::pow(anchors[0].voltage_v, alpha);
    } else {
        // Linear regression of ln F on ln V.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(anchors.size());
        for (const auto& a : anchors) {
            const double x = std::log(a.voltage_v), y = std::log(a.force_n);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        k = std::exp((sy - alpha * sx) / n);
    }

    ClutchForceModel model(k, alpha, anchors, reference_area_cm2);
    for (const auto& a : anchors) {
        const double rel = std::abs(model.holding_force(a.voltage_v) - a.force_n) / a.force_n;
        if (rel > 0.02)
            throw std::runtime_error("fit_clutch: anchor residual exceeds 2%");
    }
    return model;
}

void SleeveSpec::validate() const {
    if (modulus_kpa <= 0 || thickness_mm <= 0 || width_cm <= 0 || rest_length_cm <= 0)
        throw std::invalid_argument("SleeveSpec: dimensions and modulus must be positive");
    if (layer_count < 1)
        throw std::invalid_argument("SleeveSpec: layer_count must be >= 1");
}

double SleeveSpec::stiffness_n_per_mm(double stretchable_length_cm) const {
    // F = (stretch / L_c) * E_t * W * T_t * layers; rate = F / stretch.
    const double e_n_per_cm2 = modulus_kpa * 0.1;
    const double force_per_unit_strain = e_n_per_cm2 * width_cm * (thickness_mm * 0.1) * layer_count;
    return force_per_unit_strain / (stretchable_length_cm * 10.0);
}

SleeveForce sleeve_force(const SleeveSpec& sleeve, double stretch_mm,
                         double stretchable_length_cm, double max_stretch_fraction) {
    sleeve.validate();
    if (stretch_mm < 0)
        throw std::invalid_argument("sleeve_force: sleeve resists extension only, stretch must be >= 0");
    if (stretchable_length_cm <= 0)
        throw std::invalid_argument("sleeve_force: stretchable length must be positive");
    SleeveForce out;
    out.force_n = sleeve.stiffness_n_per_mm(stretchable_length_cm) * stretch_mm;
    out.saturated = stretch_mm > max_stretch_fraction * stretchable_length_cm * 10.0;
    return out;
}

const char* to_string(ClutchMode m) {
    switch (m) {
        case ClutchMode::Released: return "released";
        case ClutchMode::Engaging: return "engaging";
        case ClutchMode::Locked: return "locked";
        case ClutchMode::Slipping: return "slipping";
        case ClutchMode::Releasing: return "releasing";
    }
    return "?";
}

ClutchEngagementState advance_engagement(const ClutchEngagementState& state,
                                         bool commanded_on, double dt_ms,
                                         const ClutchSpec& spec) {
    if (dt_ms <= 0)
        throw std::invalid_argument("advance_engagement: dt must be positive");
    ClutchEngagementState s = state;
    if (commanded_on) {
        switch (s.mode) {
            case ClutchMode::Released:
                s.mode = ClutchMode::Engaging;
                s.transition_progress = 0.0;
                break;
            case ClutchMode::Releasing:
                // Pick up engaging at the matching capacity fraction.
                s.mode = ClutchMode::Engaging;
                s.transition_progress = 1.0 - s.transition_progress;
                break;
            default:
                break;
        }
        if (s.mode == ClutchMode::Engaging) {
            s.transition_progress += dt_ms / spec.lock_time_ms;
            if (s.transition_progress >= 1.0) {
                s.transition_progress = 1.0;
                s.mode = ClutchMode::Locked;
            }
        }
    } else {
        switch (s.mode) {
            case ClutchMode::Locked:
            case ClutchMode::Slipping:
                s.mode = ClutchMode::Releasing;
                s.transition_progress = 0.0;
                break;
            case ClutchMode::Engaging:
                s.mode = ClutchMode::Releasing;
                s.transition_progress = 1.0 - s.transition_progress;
                break;
            default:
                break;
        }
        if (s.mode == ClutchMode::Releasing) {
            s.transition_progress += dt_ms / spec.release_time_ms;
            if (s.transition_progress >= 1.0) {
                s.transition_progress = 1.0;
                s.mode = ClutchMode::Released;
            }
        }
    }
    return s;
}

double capacity_fraction(const ClutchEngagementState& state) {
    switch (state.mode) {
        case ClutchMode::Released: return 0.0;
        case ClutchMode::Engaging: return state.transition_progress;
        case ClutchMode::Locked: return 1.0;
        case ClutchMode::Slipping: return 1.0;
        case ClutchMode::Releasing: return 1.0 - state.transition_progress;
    }
    return 0.0;
}

ClutchTransmitResult clutch_transmit(const ClutchEngagementState& state,
                                     bool commanded_on, double voltage_v,
                                     double applied_tension_n,
                                     double slip_velocity_mm_s, double dt_ms,
                                     const ClutchForceModel& model,
                                     const ClutchSpec& spec,
                                     double sleeve_tension_n) {
    ClutchTransmitResult out;
    if (voltage_v < 0) { voltage_v = 0; out.clamped_input = true; }
    if (applied_tension_n < 0) { applied_tension_n = 0; out.clamped_input = true; }
    if (sleeve_tension_n < 0) { sleeve_tension_n = 0; out.clamped_input = true; }

    ClutchEngagementState s = advance_engagement(state, commanded_on, dt_ms, spec);
    const double capacity = capacity_fraction(s) * model.holding_force(voltage_v);

    if (s.mode == ClutchMode::Released) {
        out.transmitted_force_n = sleeve_tension_n;
    } else {
        const double slider_demand = applied_tension_n - sleeve_tension_n;
        if (slider_demand > capacity) {
            out.transmitted_force_n = capacity + sleeve_tension_n;
            if (s.mode == ClutchMode::Locked || s.mode == ClutchMode::Slipping)
                s.mode = ClutchMode::Slipping;
        } else {
            out.transmitted_force_n = applied_tension_n;
            if (s.mode == ClutchMode::Slipping &&
                std::abs(slip_velocity_mm_s) < kSlipCaptureThresholdMmPerS)
                s.mode = ClutchMode::Locked;
        }
    }
    out.state = s;
    return out;
}

}  // namespace antjoint
