#pragma once

#include "mzsim/unitary.hpp"

namespace mzsim {

// Directional coupler with power transmissivity eta:
//   [ sqrt(eta)        i sqrt(1-eta) ]
//   [ i sqrt(1-eta)    sqrt(eta)     ]
Unitary beam_splitter(double eta);

struct MziParams {
    double eta1 = 0.5;  // input coupler
    double eta2 = 0.5;  // output coupler
    double phi = 0.0;   // internal phase, rad

    void validate() const;
};

// Transfer matrix of the interferometer at internal phase phi.
//
// With balanced couplers this returns the real symmetric form
//   [ sin(phi/2)   cos(phi/2) ]
//   [ cos(phi/2)  -sin(phi/2) ]
// so that a single photon entering mode 1 exits mode 2 with probability
// cos^2(phi/2), one full fringe per 2 pi of phase.  phi = pi gives
// diag(1, -1), phi = 2 pi the mode swap (times a global sign).
//
// With unbalanced couplers the matrix is the composition
// BS(eta2) diag(e^{-i phi}, 1) BS(eta1); it matches the balanced form in all
// output probabilities (and up to local phases) as eta1, eta2 -> 1/2.
Unitary mzi_unitary(const MziParams &params);
Unitary mzi_unitary(double phi);

}  // namespace mzsim
