#include "mzsim/phase_unwrap.hpp"

#include <cmath>

namespace mzsim {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

std::vector<double> unwrap_phase(const std::vector<double> &raw,
                                 double ambiguity_tolerance) {
    std::vector<double> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (i == 0) {
            out.push_back(raw[0]);
            continue;
        }
        double step = std::remainder(raw[i] - raw[i - 1], kTwoPi);
        if (std::abs(std::abs(step) - M_PI) < ambiguity_tolerance) {
            throw AmbiguousBranchError(
                "phase step of exactly pi; branch cannot be chosen");
        }
        out.push_back(out.back() + step);
    }
    return out;
}

std::vector<double> unfold_phase(const std::vector<double> &folded,
                                 double ambiguity_tolerance) {
    std::vector<double> out;
    out.reserve(folded.size());
    for (std::size_t i = 0; i < folded.size(); ++i) {
        double theta = folded[i];
        if (theta < -1e-9 || theta > M_PI + 1e-9) {
            throw InvalidParameterError("folded phases must lie in [0, pi]");
        }
        theta = std::min(std::max(theta, 0.0), M_PI);
        if (i == 0) {
            out.push_back(theta);
            continue;
        }
        double prediction = out[i - 1];
        if (i >= 2) prediction += out[i - 1] - out[i - 2];

        double best = 0.0, best_dist = 0.0, second_dist = 0.0;
        bool first = true;
        for (double sign : {1.0, -1.0}) {
            double base = sign * theta;
            double candidate =
                base + kTwoPi * std::round((prediction - base) / kTwoPi);
            double dist = std::abs(candidate - prediction);
            if (first || dist < best_dist) {
                if (!first) second_dist = best_dist;
                best = candidate;
                best_dist = dist;
                first = false;
            } else {
                second_dist = dist;
            }
        }
        // The two branches merge at the fold points; a genuine tie away from
        // them means the sampling is too coarse to pick a branch.
        if (std::abs(second_dist - best_dist) < ambiguity_tolerance &&
            theta > 1e-6 && theta < M_PI - 1e-6) {
            throw AmbiguousBranchError(
                "fold branches equidistant; scan too coarse to unfold");
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace mzsim
