#include "mzsim/visibility.hpp"

#include <algorithm>
#include <cmath>

namespace mzsim {

VisibilityResult visibility_minmax(const std::vector<double> &control,
                                   const std::vector<double> &counts,
                                   std::optional<double> fixed_frequency,
                                   double max_frequency) {
    if (control.size() != counts.size()) {
        throw DimensionMismatchError("visibility_minmax: control and counts lengths differ");
    }
    if (counts.size() < 2) {
        throw DegenerateCurveError("visibility_minmax: need at least 2 samples");
    }
    bool all_zero = std::all_of(counts.begin(), counts.end(), [](double c) { return c == 0.0; });
    if (all_zero) {
        throw DegenerateCurveError("visibility_minmax: curve is identically zero");
    }
    for (double c : counts) {
        if (c < 0) {
            throw NegativeCountError("visibility_minmax: negative count");
        }
    }

    VisibilityResult result;
    double spread = *std::max_element(counts.begin(), counts.end()) -
                    *std::min_element(counts.begin(), counts.end());
    double level = *std::max_element(counts.begin(), counts.end());
    if (spread <= 1e-12 * level) {
        // Constant curve: no oscillation, V = 0 at an undefined frequency.
        result.fit.offset = counts[0];
        return result;
    }

    result.fit = fit_sinusoid(control, counts, fixed_frequency, 0.5, max_frequency);
    double max = result.fit.offset + result.fit.amplitude;
    double min = result.fit.offset - result.fit.amplitude;
    if (min < 0) {
        min = 0;  // counts cannot go negative; a fit overshooting 0 means V = 1
    }
    if (max <= 0) {
        throw DegenerateCurveError("visibility_minmax: fitted curve is non-positive");
    }
    result.visibility = (max - min) / (max + min);
    return result;
}

VisibilityResult visibility_minmax(const std::vector<double> &control,
                                   const std::vector<CountRecord> &counts,
                                   std::optional<double> fixed_frequency,
                                   double max_frequency) {
    std::vector<double> corrected(counts.size());
    bool clamped = false;
    for (size_t i = 0; i < counts.size(); i++) {
        CorrectedCount c = correct_accidentals(counts[i]);
        corrected[i] = c.value;
        clamped = clamped || c.clamped;
    }
    VisibilityResult result = visibility_minmax(control, corrected, fixed_frequency, max_frequency);
    result.any_clamped = clamped;
    return result;
}

}  // namespace mzsim
