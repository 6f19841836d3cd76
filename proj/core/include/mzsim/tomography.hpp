#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mzsim/two_photon.hpp"
#include "mzsim/unitary.hpp"

namespace mzsim {

// One Hong-Ou-Mandel measurement: photons into in1/in2, coincidences counted
// across out1/out2, dip visibility against the large-delay plateau.
struct HomEntry {
    int in1 = 0;
    int in2 = 1;
    int out1 = 0;
    int out2 = 1;
    double visibility = 0.0;
};

struct TomographyDataset {
    // singles(i, j) = P(output j | input i) = |U_ji|^2, one row per input.
    Eigen::MatrixXd singles;
    std::vector<HomEntry> hom;
    double shots = 0.0;        // counts behind each measurement; 0 = analytic
    double pair_overlap = 1.0; // source indistinguishability during HOM runs

    int dim() const { return static_cast<int>(singles.rows()); }
    void validate() const;
};

struct ReconstructedUnitary {
    Unitary u_exp;
    // For dim 2 the single mixing-angle uncertainty; empty for the numerical
    // fallback path.
    std::vector<double> parameter_uncertainties;
    double residual = 0.0;        // rms of weighted prediction misfit
    bool loss_normalized = false; // some singles row needed renormalization
    bool gauge_degenerate = false; // an exact zero left phases unconstrained
};

// Forward model: exact probabilities for shots = 0, Poisson counting noise
// otherwise.  The HOM dip is taken at zero delay regardless of pair.tau.
TomographyDataset simulate_dataset(const Unitary &u, double shots,
                                   const PhotonPairModel &pair = {},
                                   std::uint64_t seed = 0);

// Moduli from sqrt(singles), phases from the HOM visibilities.  Dim 2 is
// solved by a 1D scan over the mixing angle; dims 3 and 4 by Nelder-Mead on
// the free phases with 8 deterministic restarts.
ReconstructedUnitary reconstruct(const TomographyDataset &dataset);

// |Tr(A^dag B)| / dim.  Invariant under a global phase only; row/column
// phases move it, which is what gauge_fidelity is for.
double gate_fidelity(const Unitary &u_theo, const Unitary &u_exp);

// Deterministic representative of the row/column-phase orbit: entries along a
// spanning tree of the nonzero pattern are made real non-negative.
Unitary canonical_gauge(const Unitary &u, double tol = 1e-9);

// gate_fidelity maximized over row and column phases of the first argument,
// by alternating closed-form phase alignment.  The right score when comparing
// a reconstruction with a target whose gauge is unobservable.
double gauge_fidelity(const Unitary &a, const Unitary &b);

// CSV bundle: a singles matrix file (with `# shots=... overlap=...` up top)
// plus a visibility list file.  An empty hom path skips that file.
void save_tomography_dataset(const std::string &singles_path,
                             const std::string &hom_path,
                             const TomographyDataset &dataset);
TomographyDataset load_tomography_dataset(const std::string &singles_path,
                                          const std::string &hom_path);

}  // namespace mzsim
