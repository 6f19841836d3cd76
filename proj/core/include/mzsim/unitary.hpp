#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "mzsim/error.hpp"

namespace mzsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// ||U*U - I||_F for a square matrix.
double unitarity_deviation(const Matrix &m);

// A square matrix validated to be unitary at construction.  The tolerance is
// deliberately tight (1e-10 on the Frobenius deviation); anything looser and
// output distributions stop summing to one at the precision the tests demand.
class Unitary {
  public:
    static constexpr double kDeviationTolerance = 1e-10;

    // Throws NonSquareError / NonUnitaryError.  `tolerance` exists so that
    // compositions of already-accepted matrices can pass a 2x budget.
    static Unitary from_matrix(const Matrix &m, double tolerance = kDeviationTolerance);

    static Unitary identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix &matrix() const { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    bool approx_equal(const Unitary &other, double tol = 1e-12) const;

  private:
    explicit Unitary(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

// a * b with the doubled tolerance budget.
Unitary compose(const Unitary &a, const Unitary &b);

// Haar-distributed random unitary (Ginibre QR with the phase-of-R fix).
Unitary haar_random_unitary(int dim, std::mt19937_64 &rng);

}  // namespace mzsim
