#pragma once

#include <vector>

#include "mzsim/error.hpp"

namespace mzsim {

// Removes 2*pi jumps from an ordered scan of phases so that successive
// differences stay below pi, keeping the first sample fixed.  A step that
// lands within ambiguity_tolerance of exactly pi has no preferred branch.
std::vector<double> unwrap_phase(const std::vector<double> &raw,
                                 double ambiguity_tolerance = 1e-6);

// Recovers a continuous phase from arccos output, which folds the true phase
// into [0, pi] on top of the 2*pi wrap.  The branch at each step is picked by
// extrapolating the local slope, so the scan must be dense enough that the
// phase moves by well under pi per step.
std::vector<double> unfold_phase(const std::vector<double> &folded,
                                 double ambiguity_tolerance = 1e-9);

}  // namespace mzsim
