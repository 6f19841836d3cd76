#pragma once

#include <utility>
#include <vector>

#include "mzsim/fock_state.hpp"
#include "mzsim/unitary.hpp"

namespace mzsim {

// Probabilities over all output occupation patterns with the input photon
// number.  Entries are ordered lexicographically and sum to one within 1e-10.
class OutputDistribution {
  public:
    explicit OutputDistribution(std::vector<std::pair<FockState, double>> entries);

    const std::vector<std::pair<FockState, double>> &entries() const { return entries_; }
    // Probability of an output pattern (0 if the pattern has the wrong photon
    // number and so never appears).
    double probability(const FockState &state) const;
    double total() const;

  private:
    std::vector<std::pair<FockState, double>> entries_;
};

// Ideal bosonic interference: amplitudes are permanents of the row/column
// repeated submatrix with 1/sqrt(prod n_i! prod m_j!) normalization.  Photon
// number is capped at 8 (the permanent cost grows as 2^N).
OutputDistribution evolve_fock(const Unitary &u, const FockState &input);

// Fully distinguishable photons: each routes independently with |U_ji|^2,
// occupations add.  Same support as evolve_fock, no interference terms.
OutputDistribution evolve_distinguishable(const Unitary &u, const FockState &input);

constexpr int kMaxPhotons = 8;

}  // namespace mzsim
