#include "mzsim/stability.hpp"

#include <algorithm>
#include <cmath>

namespace mzsim {

StabilityMetrics stability_metric(const std::vector<double> &time_s,
                                  const std::vector<double> &phi) {
    if (time_s.size() != phi.size()) {
        throw DimensionMismatchError("timestamps and phases differ in length");
    }
    const std::size_t n = time_s.size();
    if (n < 10) {
        throw TooFewSamplesError("stability metric needs at least 10 samples");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(time_s[i] > time_s[i - 1])) {
            throw InvalidParameterError("timestamps must be strictly increasing");
        }
    }

    // Centered time axis keeps the normal equations well conditioned for
    // long runs.
    double t_mean = 0.0;
    for (double t : time_s) t_mean += t;
    t_mean /= n;
    double sxx = 0.0, sxy = 0.0, y_mean = 0.0;
    for (double y : phi) y_mean += y;
    y_mean /= n;
    for (std::size_t i = 0; i < n; ++i) {
        double dt = time_s[i] - t_mean;
        sxx += dt * dt;
        sxy += dt * (phi[i] - y_mean);
    }
    double slope = sxy / sxx;  // rad per second

    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = phi[i] - y_mean - slope * (time_s[i] - t_mean);
        if (i == 0) {
            lo = hi = r;
        } else {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }

    StabilityMetrics metrics;
    metrics.drift_slope = slope * 3600.0;
    metrics.peak_to_peak = hi - lo;
    return metrics;
}

}  // namespace mzsim
