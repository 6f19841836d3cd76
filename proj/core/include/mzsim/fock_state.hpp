#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzsim/error.hpp"

namespace mzsim {

// Photon occupation numbers over the circuit modes, e.g. (1,1).
class FockState {
  public:
    explicit FockState(std::vector<int> occupations);

    int modes() const { return static_cast<int>(occ_.size()); }
    int occupation(int mode) const { return occ_.at(mode); }
    int total_photons() const;
    const std::vector<int> &occupations() const { return occ_; }

    std::string to_string() const;  // "(1,1)"

    bool operator==(const FockState &other) const { return occ_ == other.occ_; }
    bool operator<(const FockState &other) const { return occ_ < other.occ_; }

  private:
    std::vector<int> occ_;
};

}  // namespace mzsim
