#pragma once

#include <vector>

#include "mzsim/fock_evolution.hpp"
#include "mzsim/mzi.hpp"
#include "mzsim/thermal.hpp"

namespace mzsim {

// Normalized single-photon (or classical laser) fringe on the cross output:
//   I(P) = 1/2 [1 + V cos(phi0 + alpha P)].
double classical_fringe(double phi0, double alpha, double visibility, double power);

// Photon pair entering both interferometer inputs.  `overlap` is the
// indistinguishability at zero delay; the mutual delay tau degrades it as a
// Gaussian with width sigma_t.  `accidental_rate` is the flat accidental
// floor per coincidence window, in units of the normalized pair flux.
struct PhotonPairModel {
    double overlap = 1.0;        // x in [0, 1]
    double sigma_t = 6.44e-13;   // s, matches the 8.8 nm filter coherence time
    double tau = 0.0;            // s
    double accidental_rate = 0.0;

    void validate() const;
    double effective_overlap() const;  // x exp(-tau^2 / 2 sigma_t^2)
    PhotonPairModel at_delay(double delay_s) const;
};

// Two-photon output statistics for |1,1> with partial distinguishability:
// I * quantum + (1 - I) * independent-particle mixture at the pair's delay.
OutputDistribution pair_distribution(const Unitary &u, const PhotonPairModel &pair);

// Coincidence probability P(1,1) of the mixture.
double hom_coincidence(const Unitary &u, const PhotonPairModel &pair);

// Dip visibility (N_clas - N_quan) / N_clas between the large-delay plateau
// and the zero-delay minimum.  Equals `overlap` for a 50/50 splitter.
double hom_visibility(const Unitary &u, const PhotonPairModel &pair);

struct TwoPhotonCurves {
    std::vector<double> control;  // heater powers, W
    std::vector<double> phi;
    std::vector<double> p11;      // coincidence 1-1 including accidental floor
    std::vector<double> p02;
    std::vector<double> p20;
};

// Two-photon fringes versus heater power for phi = phi0 + alpha P.  Both
// coincidence curves oscillate at twice the single-photon frequency; couplers
// may be detuned from 50/50.  `bunched_efficiency` rescales the (0,2)/(2,0)
// channels for the external fiber splitter and detector asymmetry (curves
// here are normalized, so the default keeps them on the pair-flux scale).
TwoPhotonCurves noon_fringes(const CrosstalkModel &model,
                             const std::vector<double> &powers,
                             const PhotonPairModel &pair,
                             double eta1 = 0.5,
                             double eta2 = 0.5,
                             double bunched_efficiency = 1.0);

struct ClassicalReferenceCurves {
    std::vector<double> control;
    std::vector<double> phi;
    std::vector<double> r11;  // coincidences of tailored classical light
    std::vector<double> r02;  // two-photon rate on one output, I2^2 / 2
};

// Best-case classical-light benchmark: intensities I_{1,2} = (1 -+ V cos phi)/2
// on the two outputs, coincidence rate proportional to I1 I2 and two-photon
// rate to I2^2.  The doubled-frequency component of r02 never exceeds
// visibility 1/3, which is the classical bound the quantum curves violate.
ClassicalReferenceCurves classical_noon_reference(const CrosstalkModel &model,
                                                  const std::vector<double> &powers,
                                                  double visibility = 1.0);

struct BoundTestResult {
    bool passes = false;   // visibility exceeds 1/3 by more than 0 sigma
    double n_sigma = 0.0;  // (V - 1/3) / sigma
};

// Significance of a measured doubled-frequency visibility against the
// classical 1/3 bound.
BoundTestResult classical_bound_test(double visibility, double sigma);

}  // namespace mzsim
