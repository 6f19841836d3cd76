#include "mzsim/fock_evolution.hpp"

#include <cmath>
#include <sstream>

#include "mzsim/permanent.hpp"

namespace mzsim {

namespace {

// All occupation patterns of `photons` photons over `modes` modes, in
// lexicographic order.
void enumerate_patterns(int modes, int photons, std::vector<int> &prefix,
                        std::vector<std::vector<int>> &out) {
    if (static_cast<int>(prefix.size()) == modes - 1) {
        prefix.push_back(photons);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int n = 0; n <= photons; n++) {
        prefix.push_back(n);
        enumerate_patterns(modes, photons - n, prefix, out);
        prefix.pop_back();
    }
}

double factorial_product(const std::vector<int> &occ) {
    double p = 1.0;
    for (int n : occ) {
        for (int k = 2; k <= n; k++) {
            p *= k;
        }
    }
    return p;
}

// Rows repeated per output occupation, columns per input occupation.
Matrix repeated_submatrix(const Matrix &u, const std::vector<int> &out_occ,
                          const std::vector<int> &in_occ, int photons) {
    Matrix sub(photons, photons);
    int r = 0;
    for (size_t j = 0; j < out_occ.size(); j++) {
        for (int rep = 0; rep < out_occ[j]; rep++, r++) {
            int c = 0;
            for (size_t i = 0; i < in_occ.size(); i++) {
                for (int rep2 = 0; rep2 < in_occ[i]; rep2++, c++) {
                    sub(r, c) = u(j, i);
                }
            }
        }
    }
    return sub;
}

OutputDistribution evolve_impl(const Unitary &u, const FockState &input, bool interfere) {
    if (input.modes() != u.dim()) {
        std::ostringstream ss;
        ss << "evolve_fock: " << input.modes() << "-mode state through " << u.dim()
           << "-mode unitary";
        throw DimensionMismatchError(ss.str());
    }
    int photons = input.total_photons();
    if (photons > kMaxPhotons) {
        std::ostringstream ss;
        ss << "evolve_fock: " << photons << " photons exceeds the " << kMaxPhotons << " cap";
        throw PhotonOverflowError(ss.str());
    }

    std::vector<std::vector<int>> patterns;
    std::vector<int> prefix;
    enumerate_patterns(u.dim(), photons, prefix, patterns);

    Matrix working = u.matrix();
    if (!interfere) {
        working = working.cwiseAbs2().cast<Complex>();
    }

    double in_fact = factorial_product(input.occupations());
    std::vector<std::pair<FockState, double>> entries;
    entries.reserve(patterns.size());
    for (const auto &pattern : patterns) {
        Matrix sub = repeated_submatrix(working, pattern, input.occupations(), photons);
        double out_fact = factorial_product(pattern);
        double p;
        if (interfere) {
            p = std::norm(permanent(sub)) / (in_fact * out_fact);
        } else {
            // The permanent of the elementwise |U|^2 submatrix counts labeled
            // particle assignments; only the output slot orderings divide out.
            p = permanent(sub).real() / out_fact;
        }
        entries.emplace_back(FockState(pattern), p);
    }
    return OutputDistribution(std::move(entries));
}

}  // namespace

OutputDistribution::OutputDistribution(std::vector<std::pair<FockState, double>> entries)
    : entries_(std::move(entries)) {
    double sum = total();
    if (std::abs(sum - 1.0) > 1e-10) {
        std::ostringstream ss;
        ss << "OutputDistribution: probabilities sum to " << sum;
        throw ValidationError(ss.str());
    }
}

double OutputDistribution::probability(const FockState &state) const {
    for (const auto &[s, p] : entries_) {
        if (s == state) {
            return p;
        }
    }
    return 0.0;
}

double OutputDistribution::total() const {
    double sum = 0.0;
    for (const auto &[s, p] : entries_) {
        sum += p;
    }
    return sum;
}

OutputDistribution evolve_fock(const Unitary &u, const FockState &input) {
    return evolve_impl(u, input, true);
}

OutputDistribution evolve_distinguishable(const Unitary &u, const FockState &input) {
    return evolve_impl(u, input, false);
}

}  // namespace mzsim
