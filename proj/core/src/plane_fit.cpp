#include "mzsim/plane_fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mzsim/error.hpp"

namespace mzsim {

PlaneFitResult fit_crosstalk_plane(const std::vector<PlaneSample> &samples) {
    const std::size_t n = samples.size();
    if (n < 4) {
        throw TooFewSamplesError("plane fit needs at least 4 samples");
    }
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = samples[i].p1;
        design(i, 2) = samples[i].p2;
        rhs(i) = samples[i].phi;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    double threshold = 1e-10 * svd.singularValues()(0);
    if (svd.singularValues()(2) <= threshold) {
        throw RankDeficientError(
            "power settings are collinear; the plane is not identifiable");
    }
    Eigen::Vector3d coeff = svd.solve(rhs);

    double ssr = (design * coeff - rhs).squaredNorm();
    double variance = ssr / static_cast<double>(n - 3);
    Eigen::Matrix3d normal_inv =
        (design.transpose() * design).ldlt().solve(Eigen::Matrix3d::Identity());

    PlaneFitResult result;
    result.model.phi0 = coeff(0);
    result.model.alphas = {coeff(1), coeff(2)};
    result.sigma_phi0 = std::sqrt(variance * normal_inv(0, 0));
    result.sigma_alpha = {std::sqrt(variance * normal_inv(1, 1)),
                          std::sqrt(variance * normal_inv(2, 2))};
    result.residual_stderr = std::sqrt(variance);
    return result;
}

}  // namespace mzsim
