#pragma once

#include <vector>

#include "mzsim/thermal.hpp"

namespace mzsim {

// One calibration point: both heater powers and the unwrapped phase read off
// the fringe at that setting.
struct PlaneSample {
    double p1 = 0.0;  // W
    double p2 = 0.0;  // W
    double phi = 0.0;  // rad
};

struct PlaneFitResult {
    CrosstalkModel model;  // phi = phi0 + alpha1 p1 + alpha2 p2
    double sigma_phi0 = 0.0;
    std::vector<double> sigma_alpha;
    double residual_stderr = 0.0;  // sqrt(SSR / (n - 3))
};

// Linear least squares for the cross-talk plane.  Needs at least 4 samples
// whose (p1, p2) points are not collinear.
PlaneFitResult fit_crosstalk_plane(const std::vector<PlaneSample> &samples);

}  // namespace mzsim
