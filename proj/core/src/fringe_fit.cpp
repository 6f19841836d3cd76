#include "mzsim/fringe_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mzsim/sinusoid.hpp"

namespace mzsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_phase(double phi) {
    double w = std::remainder(phi, kTwoPi);
    if (w <= -M_PI) w += kTwoPi;
    return w;
}

struct Sample {
    double power;
    double value;
    double weight;  // 1/sigma^2
    double sign;    // +1 for out1, -1 for out2
};

double model(const Eigen::Vector4d &theta, const Sample &s) {
    double phi = theta(1) + theta(0) * s.power;
    return 0.5 * theta(3) * (1.0 + s.sign * theta(2) * std::cos(phi));
}

Eigen::Vector4d model_gradient(const Eigen::Vector4d &theta, const Sample &s) {
    double phi = theta(1) + theta(0) * s.power;
    double c = std::cos(phi), sn = std::sin(phi);
    Eigen::Vector4d g;
    g(1) = -0.5 * theta(3) * s.sign * theta(2) * sn;
    g(0) = g(1) * s.power;
    g(2) = 0.5 * theta(3) * s.sign * c;
    g(3) = 0.5 * (1.0 + s.sign * theta(2) * c);
    return g;
}

double chi_square(const Eigen::Vector4d &theta, const std::vector<Sample> &samples) {
    double chi2 = 0.0;
    for (const auto &s : samples) {
        double r = s.value - model(theta, s);
        chi2 += s.weight * r * r;
    }
    return chi2;
}

}  // namespace

double fringe_counts(double power, const FitResult &fit, int channel) {
    if (channel != 0 && channel != 1) {
        throw InvalidParameterError("fringe channel must be 0 or 1");
    }
    double sign = channel == 0 ? 1.0 : -1.0;
    double phi = fit.phi0 + fit.alpha * power;
    return 0.5 * fit.i_tot * (1.0 + sign * fit.visibility * std::cos(phi));
}

FitResult fit_fringe(const FringeScan &scan, const FringeFitOptions &options) {
    scan.validate();
    if (scan.size() < 8) {
        throw InsufficientSpanError("fringe fit needs at least 8 samples");
    }
    std::vector<double> power = scan.power_axis(options.resistors, options.convention);

    // Corrected per-channel values; a channel with no counts at all carries
    // no fringe information and is left out of the fit.
    std::vector<std::vector<double>> values(scan.counts_out.size());
    std::vector<bool> active(scan.counts_out.size(), false);
    for (std::size_t ch = 0; ch < scan.counts_out.size(); ++ch) {
        for (const auto &record : scan.counts_out[ch]) {
            double v = options.subtract_accidentals
                           ? correct_accidentals(record).value
                           : record.raw;
            values[ch].push_back(v);
            if (v != 0.0) active[ch] = true;
        }
    }
    bool use0 = active.size() > 0 && active[0];
    bool use1 = active.size() > 1 && active[1];
    if (!use0 && !use1) {
        throw InsufficientSpanError("scan carries no counts");
    }

    // Initial guess from a linear-in-quadrature sinusoid fit.  With both
    // outputs present their difference cancels the common offset.
    double alpha0, phi00, vis0, itot0;
    if (use0 && use1) {
        std::vector<double> diff(scan.size()), total(scan.size());
        for (std::size_t i = 0; i < scan.size(); ++i) {
            diff[i] = values[0][i] - values[1][i];
            total[i] = values[0][i] + values[1][i];
        }
        double mean_total = 0.0;
        for (double t : total) mean_total += t;
        mean_total /= total.size();
        SinusoidFit init = fit_sinusoid(power, diff, std::nullopt, 0.05, options.max_alpha);
        alpha0 = init.frequency;
        phi00 = init.phase;
        itot0 = mean_total;
        vis0 = mean_total > 0 ? init.amplitude / mean_total : 0.0;
    } else {
        int ch = use0 ? 0 : 1;
        SinusoidFit init =
            fit_sinusoid(power, values[ch], std::nullopt, 0.05, options.max_alpha);
        alpha0 = init.frequency;
        phi00 = ch == 0 ? init.phase : init.phase - M_PI;
        itot0 = 2.0 * init.offset;
        vis0 = init.offset > 0 ? init.amplitude / init.offset : 0.0;
    }
    if (!(itot0 > 0)) {
        throw InsufficientSpanError("mean count level is not positive");
    }
    if (vis0 < 1e-4) {
        throw InsufficientSpanError("no fringe modulation detected");
    }
    double span = *std::max_element(power.begin(), power.end()) -
                  *std::min_element(power.begin(), power.end());
    if (alpha0 * span < kTwoPi * (1.0 - 1e-6)) {
        throw InsufficientSpanError("scan spans less than one fringe period");
    }
    vis0 = std::clamp(vis0, 0.05, 0.999);

    std::vector<Sample> samples;
    for (int ch = 0; ch < 2; ++ch) {
        if (!(ch == 0 ? use0 : use1)) continue;
        for (std::size_t i = 0; i < scan.size(); ++i) {
            Sample s;
            s.power = power[i];
            s.value = values[ch][i];
            s.sign = ch == 0 ? 1.0 : -1.0;
            s.weight = options.poisson_weights ? 1.0 / std::max(s.value, 1.0) : 1.0;
            samples.push_back(s);
        }
    }

    // Levenberg-Marquardt on (alpha, phi0, V, I_tot).
    Eigen::Vector4d theta(alpha0, phi00, vis0, itot0);
    double lambda = 1e-3;
    double chi2 = chi_square(theta, samples);
    int iterations = 0;
    bool converged = false;
    for (; iterations < options.max_iterations && !converged; ++iterations) {
        Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
        Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
        for (const auto &s : samples) {
            Eigen::Vector4d g = model_gradient(theta, s);
            double r = s.value - model(theta, s);
            jtj += s.weight * g * g.transpose();
            jtr += s.weight * g * r;
        }
        bool stepped = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Eigen::Matrix4d damped = jtj;
            for (int k = 0; k < 4; ++k) damped(k, k) += lambda * jtj(k, k) + 1e-300;
            Eigen::Vector4d delta = damped.ldlt().solve(jtr);
            Eigen::Vector4d trial = theta + delta;
            double trial_chi2 = chi_square(trial, samples);
            if (trial_chi2 <= chi2) {
                double drop = chi2 - trial_chi2;
                theta = trial;
                bool small_step = delta.cwiseAbs().maxCoeff() <
                                  1e-12 * (1.0 + theta.cwiseAbs().maxCoeff());
                chi2 = trial_chi2;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (drop <= options.tolerance * (chi2 + 1e-300) || small_step) {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // No downhill step found at any damping: already at the minimum.
            converged = true;
        }
    }
    if (!converged) {
        throw NonConvergenceError("fringe fit did not converge",
                                  iterations, std::sqrt(chi2 / samples.size()));
    }

    // Canonical form: V >= 0, alpha > 0, phi0 in (-pi, pi].  Each flip is an
    // exact symmetry of the model, so it costs nothing in chi^2.
    Eigen::Vector4d flip = Eigen::Vector4d::Ones();
    if (theta(2) < 0) {
        theta(2) = -theta(2);
        theta(1) += M_PI;
        flip(2) = -1.0;
    }
    if (theta(0) < 0) {
        theta(0) = -theta(0);
        theta(1) = -theta(1);
        flip(0) = -1.0;
        flip(1) = -1.0;
    }
    theta(1) = wrap_phase(theta(1));

    Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
    double ssr = 0.0;
    for (const auto &s : samples) {
        Eigen::Vector4d g = model_gradient(theta, s);
        jtj += s.weight * g * g.transpose();
        double r = s.value - model(theta, s);
        ssr += r * r;
    }
    FitResult result;
    result.alpha = theta(0);
    result.phi0 = theta(1);
    result.visibility = std::clamp(theta(2), 0.0, 1.0);
    result.i_tot = theta(3);
    result.iterations = iterations;
    result.residual_rms = std::sqrt(ssr / samples.size());
    Eigen::Matrix4d cov = jtj.inverse();
    if (samples.size() > 4) {
        double reduced = chi_square(theta, samples) / (samples.size() - 4);
        cov *= reduced;
    }
    result.covariance = flip.asDiagonal() * cov * flip.asDiagonal();
    return result;
}

}  // namespace mzsim
