#pragma once

#include <Eigen/Dense>

#include "mzsim/fringe_scan.hpp"

namespace mzsim {

// Parameters of N(P) = (I_tot/2) [1 +/- V cos(phi0 + alpha P)], channel 0
// taking the + sign and channel 1 the - sign.
struct FitResult {
    double alpha = 0.0;       // rad/W
    double phi0 = 0.0;        // rad, wrapped to (-pi, pi]
    double visibility = 0.0;  // in [0, 1]
    double i_tot = 0.0;       // counts per step, summed over both outputs
    Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();  // (alpha, phi0, V, I_tot)
    double residual_rms = 0.0;
    int iterations = 0;
};

struct FringeFitOptions {
    ResistorSpec resistors = {};
    DissipationConvention convention = DissipationConvention::total_circuit;
    // 1/N shot-noise weights; turn off for power-meter style data where the
    // values are not Poissonian counts.
    bool poisson_weights = true;
    bool subtract_accidentals = true;
    int max_iterations = 200;
    double tolerance = 1e-14;
    double max_alpha = 30.0;  // rad/W, upper edge of the initial frequency grid
};

// Damped Gauss-Newton fit of the fringe model to one scan.  Both output
// channels are fitted jointly when both carry counts; an all-zero channel is
// ignored.  alpha is canonicalized positive (the sign is not identifiable
// from intensities alone).
FitResult fit_fringe(const FringeScan &scan, const FringeFitOptions &options = {});

// Model prediction for one channel, mostly for round-trip tests.
double fringe_counts(double power, const FitResult &fit, int channel);

}  // namespace mzsim
