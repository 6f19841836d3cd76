#include "mzsim/fock_state.hpp"

#include <numeric>
#include <sstream>

namespace mzsim {

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
    if (occ_.empty()) {
        throw InvalidParameterError("FockState: needs at least one mode");
    }
    for (int n : occ_) {
        if (n < 0) {
            throw NegativeCountError("FockState: negative occupation");
        }
    }
}

int FockState::total_photons() const {
    return std::accumulate(occ_.begin(), occ_.end(), 0);
}

std::string FockState::to_string() const {
    std::ostringstream ss;
    ss << "(";
    for (size_t i = 0; i < occ_.size(); i++) {
        if (i) {
            ss << ",";
        }
        ss << occ_[i];
    }
    ss << ")";
    return ss.str();
}

}  // namespace mzsim
