#pragma once

#include <vector>

#include "mzsim/error.hpp"

namespace mzsim {

struct StabilityMetrics {
    double peak_to_peak = 0.0;  // rad, after removing the linear trend
    double drift_slope = 0.0;   // rad per hour
};

// Long-term phase stability of a set point: fits phi(t) = a + b t, reports
// the slope as drift and the residual peak-to-peak as fluctuation.
// Timestamps are seconds; at least 10 samples, strictly increasing.
StabilityMetrics stability_metric(const std::vector<double> &time_s,
                                  const std::vector<double> &phi);

}  // namespace mzsim
