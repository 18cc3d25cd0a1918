#include "antjoint/hasel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace antjoint {

void HaselSpec::validate() const {
    if (pouch_count < 1)
        throw std::invalid_argument("HaselSpec: pouch_count must be >= 1");
    if (pouch_length_cm <= 0 || width_cm <= 0 || total_length_cm <= 0 ||
        mass_g <= 0 || rated_voltage_kv <= 0)
        throw std::invalid_argument("HaselSpec: lengths, mass and rating must be positive");
    const double expected = pouch_count * pouch_length_cm;
    if (std::abs(total_length_cm - expected) > 0.01 * expected)
        throw std::invalid_argument("HaselSpec: total length must equal pouch_count * pouch_length within 1%");
}

HaselModel::HaselModel(HaselSpec spec, std::vector<HaselAnchor> anchors,
                       double shape_exponent_n, double voltage_scaling_exponent,
                       double shell_stiffness_n_per_mm, double relaxation_time_ms)
    : spec_(spec),
      anchors_(std::move(anchors)),
      shape_exponent_n_(shape_exponent_n),
      voltage_scaling_exponent_(voltage_scaling_exponent),
      shell_stiffness_n_per_mm_(shell_stiffness_n_per_mm),
      relaxation_time_ms_(relaxation_time_ms) {
    spec_.validate();
    if (anchors_.empty())
        throw std::invalid_argument("HaselModel: at least one anchor required");
    for (const auto& a : anchors_) {
        if (a.voltage_kv <= 0 || a.blocked_force_n <= 0 || a.free_displacement_mm <= 0)
            throw std::invalid_argument("HaselModel: anchor values must be positive");
    }
    for (std::size_t i = 1; i < anchors_.size(); ++i) {
        if (anchors_[i].voltage_kv <= anchors_[i - 1].voltage_kv)
            throw std::invalid_argument("HaselModel: anchors must be strictly ascending in voltage");
    }
    if (shape_exponent_n_ <= 0)
        throw std::invalid_argument("HaselModel: shape exponent must be positive");
    if (shell_stiffness_n_per_mm_ <= 0 || relaxation_time_ms_ <= 0)
        throw std::invalid_argument("HaselModel: shell stiffness and relaxation time must be positive");
}

void HaselModel::check_voltage(double voltage_kv) const {
    if (voltage_kv < 0 || voltage_kv > spec_.rated_voltage_kv)
        throw std::out_of_range("HaselModel: voltage outside [0, rated]");
}

namespace {

// Shared anchor interpolation for blocked force and free displacement.
double interp_anchor(const std::vector<HaselAnchor>& anchors, double v,
                     double scaling_exp, double HaselAnchor::*field) {
    if (v <= 0.0) return 0.0;
    const auto& first = anchors.front();
    if (v <= first.voltage_kv)
        return (first.*field) * std::pow(v / first.voltage_kv, scaling_exp);
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        if (v <= anchors[i].voltage_kv) {
            const auto& a = anchors[i - 1];
            const auto& b = anchors[i];
            const double t = (v - a.voltage_kv) / (b.voltage_kv - a.voltage_kv);
            return (a.*field) + t * ((b.*field) - (a.*field));
        }
    }
    // Above the highest anchor (still within rating): continue the power law
    // relative to the last anchor.
    const auto& last = anchors.back();
    return (last.*field) * std::pow(v / last.voltage_kv, scaling_exp);
}

}  // namespace

double HaselModel::blocked_force(double voltage_kv) const {
    check_voltage(voltage_kv);
    return interp_anchor(anchors_, voltage_kv, voltage_scaling_exponent_,
                         &HaselAnchor::blocked_force_n);
}

double HaselModel::free_displacement(double voltage_kv) const {
    check_voltage(voltage_kv);
    return interp_anchor(anchors_, voltage_kv, voltage_scaling_exponent_,
                         &HaselAnchor::free_displacement_mm);
}

double HaselModel::free_strain(double voltage_kv) const {
    return free_displacement(voltage_kv) / (spec_.total_length_cm * 10.0);
}

double HaselModel::force(double contraction_mm, double voltage_kv) const {
    check_voltage(voltage_kv);
    if (contraction_mm < 0.0)
        return shell_stiffness_n_per_mm_ * (-contraction_mm);  // passive shell
    const double fb = blocked_force(voltage_kv);
    const double xf = free_displacement(voltage_kv);
    if (fb <= 0.0 || xf <= 0.0) return 0.0;
    if (contraction_mm >= xf) return 0.0;
    return fb * std::pow(1.0 - contraction_mm / xf, shape_exponent_n_);
}

double HaselModel::contraction_at_tension(double tension_n, double voltage_kv) const {
    check_voltage(voltage_kv);
    if (tension_n < 0)
        throw std::invalid_argument("HaselModel: tension must be non-negative");
    const double fb = blocked_force(voltage_kv);
    const double xf = free_displacement(voltage_kv);
    if (tension_n <= fb && fb > 0.0)
        return xf * (1.0 - std::pow(tension_n / fb, 1.0 / shape_exponent_n_));
    return -(tension_n - fb) / shell_stiffness_n_per_mm_;
}

HaselModel fit_hasel(const std::vector<HaselAnchor>& anchors,
                     const std::vector<HaselCalibrationPoint>& calibration,
                     const HaselSpec& spec) {
    if (anchors.empty())
        throw std::invalid_argument("fit_hasel: at least one anchor required");
    if (calibration.empty())
        return HaselModel(spec, anchors, 1.0);

    // Feasibility plus residual evaluation both need a model at trial n.
    auto sum_sq = [&](double n) {
        HaselModel m(spec, anchors, n);
        double s = 0.0;
        for (const auto& p : calibration) {
            const double f = m.force(p.contraction_mm, p.voltage_kv);
            s += (f - p.force_n) * (f - p.force_n);
        }
        return s;
    };

    {
        HaselModel probe(spec, anchors, 1.0);
        for (const auto& p : calibration) {
            if (p.force_n < 0 || p.force_n > probe.blocked_force(p.voltage_kv))
                throw std::invalid_argument("fit_hasel: calibration point outside feasible envelope");
        }
    }

    // Coarse grid over the plausible exponent range, then golden-section
    // refinement of the best cell.
    const double lo = 0.2, hi = 8.0;
    double best_n = 1.0, best = std::numeric_limits<double>::infinity();
    const int grid = 160;
    for (int i = 0; i <= grid; ++i) {
        const double n = lo + (hi - lo) * i / grid;
        const double s = sum_sq(n);
        if (s < best) { best = s; best_n = n; }
    }
    double a = std::max(lo, best_n - (hi - lo) / grid);
    double b = std::min(hi, best_n + (hi - lo) / grid);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = sum_sq(c), fd = sum_sq(d);
    while (b - a > 1e-10) {
        if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = sum_sq(c); }
        else         { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = sum_sq(d); }
    }
    best_n = (a + b) / 2.0;

    HaselModel fitted(spec, anchors, best_n);
    for (const auto& p : calibration) {
        const double f = fitted.force(p.contraction_mm, p.voltage_kv);
        if (p.force_n > 0 && std::abs(f - p.force_n) > 0.05 * p.force_n)
            throw std::runtime_error("fit_hasel: calibration residual exceeds 5%");
    }
    return fitted;
}

}  // namespace antjoint
