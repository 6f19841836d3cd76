#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mzsim/mzi.hpp"
#include "mzsim/tomography.hpp"

using namespace mzsim;

namespace {

Unitary conjugate_of(const Unitary &u) {
    return Unitary::from_matrix(u.matrix().conjugate());
}

// Reconstruction from singles and HOM dips cannot tell a unitary from its
// complex conjugate, so round trips are scored against the better of the two.
double conj_aware_fidelity(const Unitary &truth, const Unitary &rec) {
    return std::max(gauge_fidelity(truth, rec), gauge_fidelity(conjugate_of(truth), rec));
}

}  // namespace

TEST_CASE("analytic datasets reproduce the exact probabilities") {
    MziParams params;
    params.phi = 1.3;
    Unitary u = mzi_unitary(params);
    TomographyDataset data = simulate_dataset(u, 0.0);
    REQUIRE(data.dim() == 2);
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            CHECK(data.singles(i, j) ==
                  doctest::Approx(std::norm(u(j, i))).epsilon(1e-14));
        }
    }
    REQUIRE(data.hom.size() >= 1);

    SUBCASE("a 50/50 splitter dips to full visibility") {
        TomographyDataset bs = simulate_dataset(beam_splitter(0.5), 0.0);
        CHECK(bs.hom[0].visibility == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("partial overlap scales the dip") {
        PhotonPairModel pair;
        pair.overlap = 0.92;
        TomographyDataset bs = simulate_dataset(beam_splitter(0.5), 0.0, pair);
        CHECK(bs.pair_overlap == doctest::Approx(0.92));
        CHECK(bs.hom[0].visibility == doctest::Approx(0.92).epsilon(1e-12));
    }
}

TEST_CASE("sampled singles scatter within shot noise") {
    MziParams params;
    params.phi = M_PI / 2;
    Unitary u = mzi_unitary(params);
    const double shots = 1e4;
    int within = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        TomographyDataset data = simulate_dataset(u, shots, {}, seed);
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                double p = std::norm(u(j, i));
                double sigma = std::sqrt(p * (1.0 - p) / shots);
                if (std::abs(data.singles(i, j) - p) <= 3 * sigma) within++;
                total++;
            }
        }
    }
    CHECK(total == 80);
    CHECK(within >= 76);
}

TEST_CASE("dataset validation") {
    MziParams params;
    params.phi = 1.0;
    TomographyDataset data = simulate_dataset(mzi_unitary(params), 0.0);

    SUBCASE("valid as generated") {
        data.validate();
    }
    SUBCASE("negative probability") {
        data.singles(0, 0) = -0.2;
        CHECK_THROWS_AS(data.validate(), InvalidParameterError);
    }
    SUBCASE("empty row") {
        data.singles(1, 0) = data.singles(1, 1) = 0.0;
        CHECK_THROWS_AS(data.validate(), IncompleteDatasetError);
    }
    SUBCASE("HOM indices") {
        data.hom[0].out2 = 5;
        CHECK_THROWS_AS(data.validate(), InvalidParameterError);
        data.hom[0].out2 = data.hom[0].out1;
        CHECK_THROWS_AS(data.validate(), InvalidParameterError);
    }
    SUBCASE("visibility range") {
        data.hom[0].visibility = 1.5;
        CHECK_THROWS_AS(data.validate(), InvalidParameterError);
    }
    SUBCASE("overlap range") {
        data.pair_overlap = 0.0;
        CHECK_THROWS_AS(data.validate(), InvalidParameterError);
    }
    SUBCASE("dimension limits") {
        std::mt19937_64 rng(4);
        CHECK_THROWS_AS(simulate_dataset(haar_random_unitary(5, rng), 0.0),
                        MatrixTooLargeError);
    }
}

TEST_CASE("dim-2 reconstruction") {
    SUBCASE("generic angle round trips analytically") {
        MziParams params;
        params.phi = 2.08;
        Unitary u = mzi_unitary(params);
        ReconstructedUnitary rec = reconstruct(simulate_dataset(u, 0.0));
        CHECK(gauge_fidelity(u, rec.u_exp) >= 1.0 - 1e-9);
        CHECK(rec.residual < 1e-6);
        CHECK_FALSE(rec.loss_normalized);
        CHECK_FALSE(rec.gauge_degenerate);
    }
    SUBCASE("the bar point is flagged gauge-degenerate") {
        MziParams params;
        params.phi = M_PI;
        Unitary u = mzi_unitary(params);
        ReconstructedUnitary rec = reconstruct(simulate_dataset(u, 0.0));
        CHECK(gauge_fidelity(u, rec.u_exp) >= 1.0 - 1e-9);
        CHECK(rec.gauge_degenerate);
    }
    SUBCASE("a lossy singles row is renormalized and flagged") {
        MziParams params;
        params.phi = 2.08;
        Unitary u = mzi_unitary(params);
        TomographyDataset data = simulate_dataset(u, 0.0);
        data.singles.row(0) *= 0.8;
        ReconstructedUnitary rec = reconstruct(data);
        CHECK(rec.loss_normalized);
        CHECK(gauge_fidelity(u, rec.u_exp) >= 1.0 - 1e-9);
    }
    SUBCASE("known source overlap is compensated") {
        MziParams params;
        params.phi = 2.08;
        Unitary u = mzi_unitary(params);
        PhotonPairModel pair;
        pair.overlap = 0.9;
        ReconstructedUnitary rec = reconstruct(simulate_dataset(u, 0.0, pair));
        CHECK(gauge_fidelity(u, rec.u_exp) >= 1.0 - 1e-9);
    }
    SUBCASE("finite shots come with an angle uncertainty") {
        MziParams params;
        params.phi = 2.08;
        Unitary u = mzi_unitary(params);
        ReconstructedUnitary rec = reconstruct(simulate_dataset(u, 5000.0, {}, 12));
        REQUIRE(rec.parameter_uncertainties.size() == 1);
        CHECK(rec.parameter_uncertainties[0] > 0.0);
        CHECK(gauge_fidelity(u, rec.u_exp) > 0.99);
    }
    SUBCASE("more shots mean better fidelity on average") {
        auto mean_fidelity = [](double shots) {
            double acc = 0.0;
            int n = 0;
            for (int k = 0; k < 12; k++) {
                MziParams params;
                params.phi = 0.2 + 0.45 * k;
                Unitary u = mzi_unitary(params);
                for (std::uint64_t seed = 0; seed < 5; seed++) {
                    ReconstructedUnitary rec =
                        reconstruct(simulate_dataset(u, shots, {}, 31 + 7 * seed + 100 * k));
                    acc += gauge_fidelity(u, rec.u_exp);
                    n++;
                }
            }
            return acc / n;
        };
        double coarse = mean_fidelity(50.0);
        double fine = mean_fidelity(800.0);
        CHECK(coarse > 0.99);
        CHECK(fine > coarse);
        CHECK(fine > 0.9995);
    }
}

TEST_CASE("haar round trips across the supported dimensions") {
    std::mt19937_64 rng(9);
    SUBCASE("dim 2 is conjugation-blind already") {
        for (int trial = 0; trial < 25; trial++) {
            Unitary u = haar_random_unitary(2, rng);
            ReconstructedUnitary rec = reconstruct(simulate_dataset(u, 0.0));
            CHECK(conj_aware_fidelity(u, rec.u_exp) >= 1.0 - 1e-9);
        }
    }
    SUBCASE("dims 3 and 4 need the conjugate branch") {
        for (int dim : {3, 4}) {
            for (int trial = 0; trial < 3; trial++) {
                Unitary u = haar_random_unitary(dim, rng);
                ReconstructedUnitary rec = reconstruct(simulate_dataset(u, 0.0));
                CHECK(conj_aware_fidelity(u, rec.u_exp) >= 1.0 - 1e-9);
                CHECK(rec.parameter_uncertainties.empty());
            }
        }
    }
}

TEST_CASE("too few HOM entries is an incomplete dataset") {
    std::mt19937_64 rng(2);
    Unitary u = haar_random_unitary(3, rng);
    TomographyDataset data = simulate_dataset(u, 0.0);
    REQUIRE(data.hom.size() >= 4);
    data.hom.resize(3);
    CHECK_THROWS_AS(reconstruct(data), IncompleteDatasetError);
}

TEST_CASE("gate fidelity") {
    MziParams params;
    params.phi = 1.1;
    Unitary u = mzi_unitary(params);
    CHECK(gate_fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix phased = u.matrix() * Complex(std::cos(0.7), std::sin(0.7));
    CHECK(gate_fidelity(u, Unitary::from_matrix(phased)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    params.phi = M_PI;
    CHECK(gate_fidelity(mzi_unitary(params), Unitary::identity(2)) ==
          doctest::Approx(0.0));

    CHECK_THROWS_AS(gate_fidelity(u, Unitary::identity(3)), DimensionMismatchError);
}

TEST_CASE("gauge fidelity properties") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);

    SUBCASE("invariant under row and column phases") {
        for (int trial = 0; trial < 10; trial++) {
            int dim = 2 + trial % 3;
            Unitary u = haar_random_unitary(dim, rng);
            Eigen::VectorXcd dr(dim), dc(dim);
            for (int k = 0; k < dim; k++) {
                dr(k) = std::polar(1.0, angle(rng));
                dc(k) = std::polar(1.0, angle(rng));
            }
            Matrix moved = dr.asDiagonal() * u.matrix() * dc.asDiagonal();
            CHECK(gauge_fidelity(u, Unitary::from_matrix(moved)) >= 1.0 - 1e-12);
        }
    }
    SUBCASE("never below the plain gate fidelity") {
        for (int trial = 0; trial < 10; trial++) {
            Unitary a = haar_random_unitary(3, rng);
            Unitary b = haar_random_unitary(3, rng);
            CHECK(gauge_fidelity(a, b) >= gate_fidelity(a, b) - 1e-12);
            CHECK(gauge_fidelity(a, b) <= 1.0 + 1e-12);
        }
    }
    SUBCASE("closed form for the real MZI family") {
        for (double phi_a : {0.3, 1.1, 2.0, 2.9}) {
            for (double phi_b : {0.5, 1.7, 2.6}) {
                MziParams pa, pb;
                pa.phi = phi_a;
                pb.phi = phi_b;
                double expected = std::abs(std::sin(phi_a / 2) * std::sin(phi_b / 2)) +
                                  std::abs(std::cos(phi_a / 2) * std::cos(phi_b / 2));
                CHECK(gauge_fidelity(mzi_unitary(pa), mzi_unitary(pb)) ==
                      doctest::Approx(expected).epsilon(1e-9));
            }
        }
    }
    SUBCASE("canonical gauge is idempotent and gauge-invariant") {
        Unitary u = haar_random_unitary(3, rng);
        Unitary canon = canonical_gauge(u);
        CHECK(canonical_gauge(canon).approx_equal(canon, 1e-9));
        CHECK(gauge_fidelity(u, canon) >= 1.0 - 1e-9);
        // first row and column real non-negative for a dense unitary
        for (int k = 0; k < 3; k++) {
            CHECK(canon(0, k).imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(canon(0, k).real() >= -1e-12);
            CHECK(canon(k, 0).imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(canon(k, 0).real() >= -1e-12);
        }
    }
}

TEST_CASE("tomography CSV bundle round trip") {
    std::mt19937_64 rng(21);
    Unitary u = haar_random_unitary(3, rng);
    PhotonPairModel pair;
    pair.overlap = 0.95;
    TomographyDataset data = simulate_dataset(u, 2000.0, pair, 5);

    std::string singles_path = "/tmp/mzsim_test_singles.csv";
    std::string hom_path = "/tmp/mzsim_test_hom.csv";
    save_tomography_dataset(singles_path, hom_path, data);
    TomographyDataset back = load_tomography_dataset(singles_path, hom_path);

    CHECK(back.dim() == 3);
    CHECK(back.shots == data.shots);
    CHECK(back.pair_overlap == data.pair_overlap);
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            CHECK(back.singles(i, j) == doctest::Approx(data.singles(i, j)).epsilon(1e-12));
        }
    }
    REQUIRE(back.hom.size() == data.hom.size());
    for (size_t k = 0; k < data.hom.size(); k++) {
        CHECK(back.hom[k].in1 == data.hom[k].in1);
        CHECK(back.hom[k].in2 == data.hom[k].in2);
        CHECK(back.hom[k].out1 == data.hom[k].out1);
        CHECK(back.hom[k].out2 == data.hom[k].out2);
        CHECK(back.hom[k].visibility ==
              doctest::Approx(data.hom[k].visibility).epsilon(1e-12));
    }
    std::remove(singles_path.c_str());
    std::remove(hom_path.c_str());

    SUBCASE("reconstruction agrees before and after the round trip") {
        ReconstructedUnitary a = reconstruct(data);
        ReconstructedUnitary b = reconstruct(back);
        CHECK(gauge_fidelity(a.u_exp, b.u_exp) >= 1.0 - 1e-6);
    }
}
