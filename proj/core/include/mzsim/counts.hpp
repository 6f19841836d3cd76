#pragma once

#include "mzsim/error.hpp"

namespace mzsim {

// One detector reading: raw counts plus the independently measured
// accidental-coincidence estimate for the same integration window.
struct CountRecord {
    double raw = 0.0;
    double accidental = 0.0;

    CountRecord() = default;
    CountRecord(double raw, double accidental = 0.0);
};

struct CorrectedCount {
    double value = 0.0;
    bool clamped = false;  // raw - accidental went negative and was floored at 0
};

CorrectedCount correct_accidentals(const CountRecord &record);

// Shot-noise standard deviation of a Poissonian count, sqrt(N).
double poisson_sigma(double count);

}  // namespace mzsim
