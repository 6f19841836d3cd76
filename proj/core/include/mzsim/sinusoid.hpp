#pragma once

#include <optional>
#include <vector>

#include "mzsim/error.hpp"

namespace mzsim {

// y(x) = offset + amplitude * cos(frequency * x + phase), amplitude >= 0.
struct SinusoidFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
    double rms_residual = 0.0;
};

// Least-squares sinusoid.  With a fixed frequency the problem is linear and
// solved exactly; otherwise the frequency comes from a dense scan over
// [min_frequency, max_frequency] with parabolic refinement of the best cell.
SinusoidFit fit_sinusoid(const std::vector<double> &x,
                         const std::vector<double> &y,
                         std::optional<double> fixed_frequency = std::nullopt,
                         double min_frequency = 0.5,
                         double max_frequency = 60.0);

}  // namespace mzsim
