#include "mzsim/mzi.hpp"

#include <cmath>

namespace mzsim {

Unitary beam_splitter(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw InvalidParameterError("beam_splitter: eta outside [0, 1]");
    }
    double t = std::sqrt(eta);
    double r = std::sqrt(1.0 - eta);
    Matrix m(2, 2);
    m << Complex(t, 0), Complex(0, r), Complex(0, r), Complex(t, 0);
    return Unitary::from_matrix(m);
}

void MziParams::validate() const {
    if (!(eta1 >= 0.0 && eta1 <= 1.0) || !(eta2 >= 0.0 && eta2 <= 1.0)) {
        throw InvalidParameterError("MziParams: coupler transmissivity outside [0, 1]");
    }
    if (!std::isfinite(phi)) {
        throw InvalidParameterError("MziParams: phi is not finite");
    }
}

Unitary mzi_unitary(const MziParams &params) {
    params.validate();
    if (params.eta1 == 0.5 && params.eta2 == 0.5) {
        double s = std::sin(params.phi / 2);
        double c = std::cos(params.phi / 2);
        Matrix m(2, 2);
        m << Complex(s, 0), Complex(c, 0), Complex(c, 0), Complex(-s, 0);
        return Unitary::from_matrix(m);
    }
    Matrix phase = Matrix::Identity(2, 2);
    phase(0, 0) = std::exp(Complex(0, -params.phi));
    Matrix m = beam_splitter(params.eta2).matrix() * phase * beam_splitter(params.eta1).matrix();
    return Unitary::from_matrix(m);
}

Unitary mzi_unitary(double phi) {
    MziParams params;
    params.phi = phi;
    return mzi_unitary(params);
}

}  // namespace mzsim
