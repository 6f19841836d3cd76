#include "mzsim/unitary.hpp"

#include <sstream>

namespace mzsim {

double unitarity_deviation(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw NonSquareError("unitarity_deviation: matrix is not square");
    }
    Matrix gram = m.adjoint() * m;
    gram -= Matrix::Identity(m.rows(), m.cols());
    return gram.norm();
}

Unitary Unitary::from_matrix(const Matrix &m, double tolerance) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw NonSquareError("Unitary: empty matrix");
    }
    if (m.rows() != m.cols()) {
        std::ostringstream ss;
        ss << "Unitary: matrix is " << m.rows() << "x" << m.cols() << ", not square";
        throw NonSquareError(ss.str());
    }
    if (m.rows() < 2) {
        throw InvalidParameterError("Unitary: need at least 2 modes");
    }
    double dev = unitarity_deviation(m);
    if (!(dev <= tolerance)) {  // also rejects NaN
        std::ostringstream ss;
        ss << "Unitary: ||U*U - I||_F = " << dev << " exceeds tolerance " << tolerance;
        throw NonUnitaryError(ss.str(), dev);
    }
    return Unitary(m);
}

Unitary Unitary::identity(int dim) {
    if (dim < 2) {
        throw InvalidParameterError("Unitary: need at least 2 modes");
    }
    return Unitary(Matrix::Identity(dim, dim));
}

bool Unitary::approx_equal(const Unitary &other, double tol) const {
    if (dim() != other.dim()) {
        return false;
    }
    return (m_ - other.m_).cwiseAbs().maxCoeff() <= tol;
}

Unitary compose(const Unitary &a, const Unitary &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("compose: dimensions differ");
    }
    return Unitary::from_matrix(a.matrix() * b.matrix(), 2 * Unitary::kDeviationTolerance);
}

Unitary haar_random_unitary(int dim, std::mt19937_64 &rng) {
    if (dim < 1) throw InvalidParameterError("haar_random_unitary: dim must be >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Without rescaling by the phases of diag(R) the QR convention biases the
    // distribution away from Haar.
    for (int c = 0; c < dim; ++c) {
        Complex d = r(c, c);
        double mag = std::abs(d);
        q.col(c) *= mag > 0 ? d / mag : Complex(1.0, 0.0);
    }
    return Unitary::from_matrix(q, 10 * Unitary::kDeviationTolerance);
}

}  // namespace mzsim
