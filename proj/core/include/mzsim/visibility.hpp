#pragma once

#include <optional>
#include <vector>

#include "mzsim/counts.hpp"
#include "mzsim/sinusoid.hpp"

namespace mzsim {

struct VisibilityResult {
    double visibility = 0.0;  // (max - min)/(max + min) of the fitted sinusoid
    SinusoidFit fit;
    bool any_clamped = false;  // an accidental subtraction hit zero
};

// Fringe visibility from fitted sinusoid extrema.  Raw sample extrema are
// biased high by shot noise, so the curve is fitted first and V evaluated on
// the fit.  Pass `fixed_frequency` when the oscillation frequency is known
// (e.g. the doubled two-photon frequency); otherwise it is scanned.
VisibilityResult visibility_minmax(const std::vector<double> &control,
                                   const std::vector<double> &counts,
                                   std::optional<double> fixed_frequency = std::nullopt,
                                   double max_frequency = 60.0);

// Same, with per-sample accidental subtraction (clamped at zero) first.
VisibilityResult visibility_minmax(const std::vector<double> &control,
                                   const std::vector<CountRecord> &counts,
                                   std::optional<double> fixed_frequency = std::nullopt,
                                   double max_frequency = 60.0);

}  // namespace mzsim
