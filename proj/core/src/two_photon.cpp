#include "mzsim/two_photon.hpp"

#include <cmath>

namespace mzsim {

double classical_fringe(double phi0, double alpha, double visibility, double power) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw InvalidParameterError("classical_fringe: visibility outside [0, 1]");
    }
    if (power < 0) {
        throw InvalidParameterError("classical_fringe: negative power");
    }
    return 0.5 * (1.0 + visibility * std::cos(phi0 + alpha * power));
}

void PhotonPairModel::validate() const {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw InvalidParameterError("PhotonPairModel: overlap outside [0, 1]");
    }
    if (!(sigma_t > 0)) {
        throw InvalidParameterError("PhotonPairModel: sigma_t must be positive");
    }
    if (accidental_rate < 0) {
        throw InvalidParameterError("PhotonPairModel: negative accidental rate");
    }
}

double PhotonPairModel::effective_overlap() const {
    validate();
    double z = tau / sigma_t;
    return overlap * std::exp(-0.5 * z * z);
}

PhotonPairModel PhotonPairModel::at_delay(double delay_s) const {
    PhotonPairModel copy = *this;
    copy.tau = delay_s;
    return copy;
}

OutputDistribution pair_distribution(const Unitary &u, const PhotonPairModel &pair) {
    FockState input({1, 1});
    if (u.dim() != 2) {
        throw DimensionMismatchError("pair_distribution: expected a 2-mode unitary");
    }
    double overlap = pair.effective_overlap();
    OutputDistribution quantum = evolve_fock(u, input);
    OutputDistribution classical = evolve_distinguishable(u, input);
    std::vector<std::pair<FockState, double>> mixed;
    mixed.reserve(quantum.entries().size());
    for (size_t i = 0; i < quantum.entries().size(); i++) {
        const auto &[state, pq] = quantum.entries()[i];
        double pd = classical.entries()[i].second;
        mixed.emplace_back(state, overlap * pq + (1.0 - overlap) * pd);
    }
    return OutputDistribution(std::move(mixed));
}

double hom_coincidence(const Unitary &u, const PhotonPairModel &pair) {
    return pair_distribution(u, pair).probability(FockState({1, 1}));
}

double hom_visibility(const Unitary &u, const PhotonPairModel &pair) {
    FockState coincidence({1, 1});
    double plateau = evolve_distinguishable(u, FockState({1, 1})).probability(coincidence);
    if (plateau <= 0) {
        throw DegenerateCurveError("hom_visibility: no distinguishable coincidences");
    }
    double dip = hom_coincidence(u, pair.at_delay(0.0));
    return (plateau - dip) / plateau;
}

TwoPhotonCurves noon_fringes(const CrosstalkModel &model,
                             const std::vector<double> &powers,
                             const PhotonPairModel &pair,
                             double eta1,
                             double eta2,
                             double bunched_efficiency) {
    pair.validate();
    TwoPhotonCurves curves;
    curves.control = powers;
    curves.phi.reserve(powers.size());
    curves.p11.reserve(powers.size());
    curves.p02.reserve(powers.size());
    curves.p20.reserve(powers.size());
    for (double p : powers) {
        double phi = phase_from_powers(model, {p});
        MziParams params;
        params.eta1 = eta1;
        params.eta2 = eta2;
        params.phi = phi;
        OutputDistribution dist = pair_distribution(mzi_unitary(params), pair);
        curves.phi.push_back(phi);
        curves.p11.push_back(dist.probability(FockState({1, 1})) + pair.accidental_rate);
        curves.p02.push_back(bunched_efficiency * dist.probability(FockState({0, 2})) +
                             pair.accidental_rate);
        curves.p20.push_back(bunched_efficiency * dist.probability(FockState({2, 0})) +
                             pair.accidental_rate);
    }
    return curves;
}

ClassicalReferenceCurves classical_noon_reference(const CrosstalkModel &model,
                                                  const std::vector<double> &powers,
                                                  double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw InvalidParameterError("classical_noon_reference: visibility outside [0, 1]");
    }
    ClassicalReferenceCurves curves;
    curves.control = powers;
    for (double p : powers) {
        double phi = phase_from_powers(model, {p});
        double i1 = 0.5 * (1.0 + visibility * std::cos(phi));
        double i2 = 0.5 * (1.0 - visibility * std::cos(phi));
        curves.phi.push_back(phi);
        curves.r11.push_back(i1 * i2);
        curves.r02.push_back(0.5 * i2 * i2);
    }
    return curves;
}

BoundTestResult classical_bound_test(double visibility, double sigma) {
    if (!(sigma > 0)) {
        throw InvalidParameterError("classical_bound_test: sigma must be positive");
    }
    BoundTestResult result;
    result.n_sigma = (visibility - 1.0 / 3.0) / sigma;
    result.passes = result.n_sigma > 0;
    return result;
}

}  // namespace mzsim
