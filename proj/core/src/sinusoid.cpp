#include "mzsim/sinusoid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace mzsim {

namespace {

struct LinearFit {
    double a = 0.0, p = 0.0, q = 0.0;  // y = a + p cos wx + q sin wx
    double ssr = 0.0;
};

LinearFit solve_at_frequency(const std::vector<double> &x, const std::vector<double> &y,
                             double w) {
    const size_t n = x.size();
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (size_t i = 0; i < n; i++) {
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(w * x[i]);
        design(i, 2) = std::sin(w * x[i]);
        rhs(i) = y[i];
    }
    Eigen::Vector3d coeff =
        (design.transpose() * design).ldlt().solve(design.transpose() * rhs);
    LinearFit fit;
    fit.a = coeff(0);
    fit.p = coeff(1);
    fit.q = coeff(2);
    fit.ssr = (design * coeff - rhs).squaredNorm();
    return fit;
}

}  // namespace

SinusoidFit fit_sinusoid(const std::vector<double> &x, const std::vector<double> &y,
                         std::optional<double> fixed_frequency, double min_frequency,
                         double max_frequency) {
    if (x.size() != y.size()) {
        throw DimensionMismatchError("fit_sinusoid: x and y lengths differ");
    }
    if (x.size() < 2) {
        throw DegenerateCurveError("fit_sinusoid: need at least 2 samples");
    }

    double w;
    if (fixed_frequency) {
        w = *fixed_frequency;
        if (!(w > 0)) {
            throw InvalidParameterError("fit_sinusoid: frequency must be positive");
        }
    } else {
        double span = *std::max_element(x.begin(), x.end()) -
                      *std::min_element(x.begin(), x.end());
        if (!(span > 0)) {
            throw DegenerateCurveError("fit_sinusoid: zero control span");
        }
        // Dense enough that the phase slip between adjacent trial frequencies
        // stays well under a cycle across the scan span.
        int steps = std::max(64, static_cast<int>((max_frequency - min_frequency) * span * 3));
        double best_w = min_frequency;
        double best_ssr = std::numeric_limits<double>::infinity();
        std::vector<double> ssr_left_right(3, 0.0);
        double dw = (max_frequency - min_frequency) / steps;
        for (int k = 0; k <= steps; k++) {
            double trial = min_frequency + k * dw;
            double ssr = solve_at_frequency(x, y, trial).ssr;
            if (ssr < best_ssr) {
                best_ssr = ssr;
                best_w = trial;
            }
        }
        // Ternary-search refinement inside the best cell.
        double lo = std::max(min_frequency, best_w - dw);
        double hi = std::min(max_frequency, best_w + dw);
        for (int iter = 0; iter < 40; iter++) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (solve_at_frequency(x, y, m1).ssr < solve_at_frequency(x, y, m2).ssr) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        w = (lo + hi) / 2;
    }

    LinearFit lin = solve_at_frequency(x, y, w);
    SinusoidFit fit;
    fit.offset = lin.a;
    fit.amplitude = std::hypot(lin.p, lin.q);
    fit.frequency = w;
    fit.phase = std::atan2(-lin.q, lin.p);
    fit.rms_residual = std::sqrt(lin.ssr / x.size());
    return fit;
}

}  // namespace mzsim
