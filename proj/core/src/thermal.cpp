#include "mzsim/thermal.hpp"

#include <cmath>
#include <sstream>

namespace mzsim {

void MaterialParams::validate() const {
    if (!(kappa > 0)) {
        throw InvalidParameterError("MaterialParams: kappa must be positive");
    }
    if (!(n_T > 0)) {
        throw InvalidParameterError("MaterialParams: n_T must be positive");
    }
    if (!(wavelength > 0)) {
        throw InvalidParameterError("MaterialParams: wavelength must be positive");
    }
}

void ShifterGeometry::validate() const {
    if (!(rho1 > 0) || !(rho2 > 0)) {
        throw ZeroRadiusError("ShifterGeometry: arm distances must be positive");
    }
    if (!(arm_length > 0) || !(wire_length > 0)) {
        throw InvalidParameterError("ShifterGeometry: lengths must be positive");
    }
}

double predict_alpha(const ShifterGeometry &geom, const MaterialParams &mat) {
    geom.validate();
    mat.validate();
    return 2.0 * mat.n_T / mat.wavelength / mat.kappa * (geom.arm_length / geom.wire_length) *
           std::log(geom.rho1 / geom.rho2);
}

double log_temperature(double p_watts,
                       double rho,
                       const ShifterGeometry &geom,
                       const MaterialParams &mat,
                       double base_temperature,
                       double rho_ref) {
    geom.validate();
    mat.validate();
    if (!(rho > 0) || !(rho_ref > 0)) {
        throw ZeroRadiusError("log_temperature: rho must be positive");
    }
    if (p_watts < 0) {
        throw InvalidParameterError("log_temperature: negative power");
    }
    double c2 = p_watts / (M_PI * mat.kappa * geom.wire_length);
    return base_temperature - c2 * std::log(rho / rho_ref);
}

double phase_from_powers(const CrosstalkModel &model, const std::vector<double> &powers) {
    if (powers.size() != model.alphas.size()) {
        std::ostringstream ss;
        ss << "phase_from_powers: " << powers.size() << " powers for " << model.alphas.size()
           << " heaters";
        throw DimensionMismatchError(ss.str());
    }
    double phi = model.phi0;
    for (size_t i = 0; i < powers.size(); i++) {
        if (powers[i] < 0) {
            throw InvalidParameterError("phase_from_powers: negative power");
        }
        phi += model.alphas[i] * powers[i];
    }
    return phi;
}

void StepResponse::validate() const {
    if (!(tau > 0)) {
        throw InvalidParameterError("StepResponse: tau must be positive");
    }
}

double step_phase(const StepResponse &step, double t_seconds) {
    step.validate();
    if (t_seconds < 0) {
        throw InvalidParameterError("step_phase: negative time");
    }
    return step.phi_final + (step.phi_initial - step.phi_final) * std::exp(-t_seconds / step.tau);
}

double rise_time_10_90(const StepResponse &step) {
    step.validate();
    return step.tau * std::log(9.0);
}

}  // namespace mzsim
