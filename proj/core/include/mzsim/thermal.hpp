#pragma once

#include <vector>

#include "mzsim/error.hpp"

namespace mzsim {

// Bulk properties of the substrate and guided mode.  Defaults are borosilicate
// glass at telecom wavelength.
struct MaterialParams {
    double kappa = 0.9;         // thermal conductivity, W m^-1 K^-1
    double n_T = 1.0e-5;        // thermo-optic coefficient, K^-1
    double wavelength = 1.55e-6;  // m

    void validate() const;
};

// Geometry of one resistive heater relative to the two interferometer arms.
// rho1 and rho2 are the straight-line distances from the wire to each arm.
struct ShifterGeometry {
    double rho1 = 0.0;     // m
    double rho2 = 0.0;     // m
    double arm_length = 12e-3;   // heated straight section, m
    double wire_length = 20e-3;  // m

    void validate() const;
};

// Phase-per-watt response of an arm pair to one heater, from the cylindrical
// steady-state model:
//
//   alpha = (2 n_T / lambda) (1 / kappa) (L_arm / L_wire) ln(rho1 / rho2)
//
// The sign follows ln(rho1/rho2); swapping the arms negates it.
double predict_alpha(const ShifterGeometry &geom, const MaterialParams &mat);

// Radial steady-state temperature around the wire at dissipated power p_watts:
// T(rho) = T(rho_ref) - [P / (pi kappa L_wire)] ln(rho / rho_ref).
// rho_ref defaults to the 1 mm chip thickness, where the field is pinned to
// the base temperature.
double log_temperature(double p_watts,
                       double rho,
                       const ShifterGeometry &geom,
                       const MaterialParams &mat,
                       double base_temperature,
                       double rho_ref = 1e-3);

// phi = phi0 + sum_i alpha_i P_i.  One alpha per heater.
struct CrosstalkModel {
    double phi0 = 0.0;
    std::vector<double> alphas;
};

double phase_from_powers(const CrosstalkModel &model, const std::vector<double> &powers);

// First-order thermal settling between two phase set points.
struct StepResponse {
    double phi_initial = 0.0;
    double phi_final = 0.0;
    double tau = 0.41;  // s

    void validate() const;
};

// phi(t) = phi_final + (phi_initial - phi_final) exp(-t / tau), t >= 0.
double step_phase(const StepResponse &step, double t_seconds);

// 10%-to-90% settling interval, tau ln 9.
double rise_time_10_90(const StepResponse &step);

}  // namespace mzsim
