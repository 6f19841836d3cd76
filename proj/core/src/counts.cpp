#include "mzsim/counts.hpp"

#include <cmath>

namespace mzsim {

CountRecord::CountRecord(double raw, double accidental) : raw(raw), accidental(accidental) {
    if (raw < 0) {
        throw NegativeCountError("CountRecord: negative raw count");
    }
    if (accidental < 0) {
        throw NegativeCountError("CountRecord: negative accidental count");
    }
}

CorrectedCount correct_accidentals(const CountRecord &record) {
    double diff = record.raw - record.accidental;
    if (diff < 0) {
        return {0.0, true};
    }
    return {diff, false};
}

double poisson_sigma(double count) {
    if (count < 0) {
        throw NegativeCountError("poisson_sigma: negative count");
    }
    return std::sqrt(count);
}

}  // namespace mzsim
