#include <doctest.h>

#include <cmath>
#include <random>

#include "mzsim/fock_evolution.hpp"
#include "mzsim/mzi.hpp"
#include "mzsim/two_photon.hpp"

using namespace mzsim;

TEST_CASE("fock state bookkeeping") {
    FockState s({1, 1});
    CHECK(s.modes() == 2);
    CHECK(s.total_photons() == 2);
    CHECK(s.to_string() == "(1,1)");
    CHECK_THROWS_AS(FockState({1, -1}), NegativeCountError);
}

TEST_CASE("two photons into a 50/50 splitter coalesce") {
    OutputDistribution dist = evolve_fock(beam_splitter(0.5), FockState({1, 1}));
    CHECK(dist.probability(FockState({1, 1})) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dist.probability(FockState({2, 0})) == doctest::Approx(0.5));
    CHECK(dist.probability(FockState({0, 2})) == doctest::Approx(0.5));
}

TEST_CASE("pair statistics oscillate at twice the single-photon frequency") {
    for (int k = 0; k <= 100; ++k) {
        double phi = 2 * M_PI * k / 100;
        Unitary u = mzi_unitary(phi);
        OutputDistribution pair = evolve_fock(u, FockState({1, 1}));
        double c = std::cos(phi), s = std::sin(phi);
        CHECK(std::abs(pair.probability(FockState({1, 1})) - c * c) < 1e-12);
        CHECK(std::abs(pair.probability(FockState({0, 2})) - s * s / 2) < 1e-12);
        CHECK(std::abs(pair.probability(FockState({2, 0})) - s * s / 2) < 1e-12);

        // Single-photon marginal must reproduce the ideal fringe at half the
        // frequency.
        OutputDistribution single = evolve_fock(u, FockState({1, 0}));
        double cross = std::cos(phi / 2) * std::cos(phi / 2);
        CHECK(std::abs(single.probability(FockState({0, 1})) - cross) < 1e-12);
        CHECK(std::abs(single.probability(FockState({0, 1})) -
                       classical_fringe(0.0, 1.0, 1.0, phi)) < 1e-12);
        for (int j = 0; j < 2; ++j) {
            FockState out(j == 0 ? std::vector<int>{1, 0} : std::vector<int>{0, 1});
            CHECK(std::abs(single.probability(out) - std::norm(u(j, 0))) < 1e-12);
        }
    }
}

TEST_CASE("output distributions are normalized for any circuit and input") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> photon(0, 2);
    for (int trial = 0; trial < 60; ++trial) {
        int dim = 2 + trial % 3;
        Unitary u = haar_random_unitary(dim, rng);
        std::vector<int> occ(static_cast<size_t>(dim));
        int total = 0;
        for (int &n : occ) {
            n = photon(rng);
            total += n;
        }
        if (total == 0 || total > 8) continue;
        FockState input(occ);
        CHECK(std::abs(evolve_fock(u, input).total() - 1.0) < 1e-10);
        CHECK(std::abs(evolve_distinguishable(u, input).total() - 1.0) < 1e-10);
    }
}

TEST_CASE("distinguishable photons route independently") {
    for (double phi : {0.4, 1.3, 2.6}) {
        Unitary u = mzi_unitary(phi);
        OutputDistribution dist = evolve_distinguishable(u, FockState({1, 1}));
        double a = std::norm(u(0, 0)), b = std::norm(u(0, 1));
        double c = std::norm(u(1, 0)), d = std::norm(u(1, 1));
        CHECK(dist.probability(FockState({1, 1})) ==
              doctest::Approx(a * d + b * c).epsilon(1e-12));
        CHECK(dist.probability(FockState({2, 0})) ==
              doctest::Approx(a * b).epsilon(1e-12));
    }
}

TEST_CASE("photon number is capped") {
    Unitary u = beam_splitter(0.5);
    CHECK_THROWS_AS(evolve_fock(u, FockState({5, 4})), PhotonOverflowError);
    CHECK(evolve_fock(u, FockState({4, 4})).total() == doctest::Approx(1.0));
    CHECK_THROWS_AS(evolve_fock(u, FockState({1, 1, 1})), DimensionMismatchError);
}
