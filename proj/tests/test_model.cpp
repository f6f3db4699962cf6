#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sshc/errors.hpp"
#include "sshc/linalg.hpp"
#include "sshc/model.hpp"

using namespace sshc;

namespace {

ChainParams params(std::size_t n, double phi, double g1, double g2) {
    ChainParams p;
    p.n_cells = n;
    p.t0 = 1.0;
    p.phi = phi;
    p.gamma1 = g1;
    p.gamma2 = g2;
    return p;
}

}  // namespace

TEST_CASE("couplings: dimerized limits and the reference working point") {
    auto c0 = model::couplings(params(4, 0.0, 0.0, 0.0));
    CHECK(c0.t_A_real == 0.0);
    CHECK(c0.t_B_real == 2.0);

    auto c1 = model::couplings(params(4, M_PI / 2.0, 0.0, 0.0));
    CHECK(std::abs(c1.t_A_real - 1.0) < 1e-15);
    CHECK(std::abs(c1.t_B_real - 1.0) < 1e-15);

    auto c2 = model::couplings(params(4, 0.4 * M_PI, 0.25, 0.75));
    CHECK(std::abs(c2.t_A_real - 0.6909830056250525) < 1e-15);
    CHECK(std::abs(c2.t_B_real - 1.3090169943749475) < 1e-15);
    CHECK(c2.t_A == cdouble(c2.t_A_real, -0.25));
    CHECK(c2.t_B == cdouble(c2.t_B_real, -0.75));
}

TEST_CASE("build_open_chain: single cell carries only the intracell bond") {
    const auto p = params(1, 0.3 * M_PI, 0.5, 1.5);
    const auto c = model::couplings(p);
    const auto H = model::build_open_chain(p);
    REQUIRE(H.rows() == 2);
    CHECK(H(0, 0) == cdouble(0.0, 0.0));
    CHECK(H(1, 1) == cdouble(0.0, 0.0));
    CHECK(H(0, 1) == c.t_A);
    CHECK(H(1, 0) == c.t_A);
}

TEST_CASE("build_open_chain: Hermitian limit at phi = pi/2 is the uniform-hopping chain") {
    const auto H = model::build_open_chain(params(2, M_PI / 2.0, 0.0, 0.0));
    REQUIRE(H.rows() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(H(i, j).imag() == 0.0);
            if (i == j + 1 || j == i + 1) {
                CHECK(std::abs(H(i, j).real() - 1.0) < 1e-15);
            } else {
                CHECK(H(i, j).real() == 0.0);
            }
        }
    }
}

TEST_CASE("build_open_chain: reference chain shows two near-zero hybridized eigenvalues") {
    const auto H = model::build_open_chain(params(20, 0.4 * M_PI, 1.0, 1.0));
    const auto d = linalg::eig(H);
    std::size_t near_zero = 0;
    for (const cdouble& l : d.eigenvalues) {
        if (std::abs(l) < 0.1) ++near_zero;
    }
    CHECK(near_zero == 2);
}

TEST_CASE("build_open_chain: on-site variants and omega land on the diagonal") {
    ChainParams p = params(3, 0.35 * M_PI, 0.4, 0.9);
    p.omega = 0.7;
    auto H = model::build_open_chain(p);
    for (std::size_t s = 0; s < 6; ++s) CHECK(H(s, s) == cdouble(0.7, 0.0));

    p.omega = 0.0;
    p.onsite = {OnSiteKind::uniform_loss, 0.2};
    H = model::build_open_chain(p);
    for (std::size_t s = 0; s < 6; ++s) CHECK(H(s, s) == cdouble(0.0, -0.2));

    p.onsite = {OnSiteKind::staggered_gain_loss, 0.2};
    H = model::build_open_chain(p);
    for (std::size_t s = 0; s < 6; ++s) {
        CHECK(H(s, s) == cdouble(0.0, s % 2 == 0 ? 0.2 : -0.2));
    }

    p.onsite = {OnSiteKind::endpoints_only, 0.2};
    H = model::build_open_chain(p);
    CHECK(H(0, 0) == cdouble(0.0, -0.2));
    CHECK(H(5, 5) == cdouble(0.0, 0.2));
    for (std::size_t s = 1; s < 5; ++s) CHECK(H(s, s) == cdouble(0.0, 0.0));
}

TEST_CASE("build_open_chain: complex symmetric for every on-site variant") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (OnSiteKind kind : {OnSiteKind::none, OnSiteKind::uniform_loss,
                            OnSiteKind::staggered_gain_loss, OnSiteKind::endpoints_only}) {
        ChainParams p = params(2 + rng() % 6, u(rng) * M_PI, u(rng), u(rng));
        p.onsite = {kind, 0.3 * u(rng)};
        const auto H = model::build_open_chain(p);
        for (std::size_t i = 0; i < H.rows(); ++i) {
            for (std::size_t j = 0; j < H.cols(); ++j) CHECK(H(i, j) == H(j, i));
        }
    }
}

TEST_CASE("build_open_chain: dissipation-free chain is real symmetric") {
    const auto H = model::build_open_chain(params(5, 0.27 * M_PI, 0.0, 0.0));
    for (std::size_t i = 0; i < H.rows(); ++i) {
        for (std::size_t j = 0; j < H.cols(); ++j) CHECK(H(i, j).imag() == 0.0);
    }
}

TEST_CASE("build_open_chain: spectrum is symmetric under E -> -E") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = params(2 + rng() % 9, 0.05 + 0.9 * u(rng) * M_PI, 1.5 * u(rng), 1.5 * u(rng));
        const auto d = linalg::eig(model::build_open_chain(p));
        std::vector<cdouble> negated;
        for (const cdouble& l : d.eigenvalues) negated.push_back(-l);
        CHECK(oracle::multiset_distance(d.eigenvalues, negated) < 1e-9);
    }
}

TEST_CASE("build_open_chain: uniform loss rigidly shifts the spectrum by -i*strength") {
    auto p = params(6, 0.33 * M_PI, 0.8, 0.5);
    const auto bare = linalg::eig(model::build_open_chain(p));
    p.onsite = {OnSiteKind::uniform_loss, 0.35};
    const auto lossy = linalg::eig(model::build_open_chain(p));
    std::vector<cdouble> shifted;
    for (const cdouble& l : bare.eigenvalues) shifted.push_back(l + cdouble(0.0, -0.35));
    CHECK(oracle::multiset_distance(lossy.eigenvalues, shifted) < 1e-9);
}

TEST_CASE("bloch_hamiltonian: high-symmetry points and chiral symmetry") {
    const auto p = params(4, 0.3 * M_PI, 0.6, 1.1);
    const auto c = model::couplings(p);

    const auto H0 = model::bloch_hamiltonian(p, 0.0);
    CHECK(std::abs(H0(0, 1) - (c.t_A + c.t_B)) < 1e-15);
    CHECK(std::abs(H0(1, 0) - (c.t_A + c.t_B)) < 1e-15);
    CHECK(H0(0, 0) == cdouble(0.0, 0.0));
    CHECK(H0(1, 1) == cdouble(0.0, 0.0));

    const auto Hpi = model::bloch_hamiltonian(p, M_PI);
    CHECK(std::abs(Hpi(0, 1) - (c.t_A - c.t_B)) < 1e-15);
    CHECK(std::abs(Hpi(1, 0) - (c.t_A - c.t_B)) < 1e-15);

    // sigma_z H sigma_z = -H: zero diagonal and sign-flipped off-diagonals.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = params(3, u(rng) * M_PI, 2.0 * u(rng), 2.0 * u(rng));
        const double k = (2.0 * u(rng) - 1.0) * M_PI;
        const auto Hk = model::bloch_hamiltonian(q, k);
        ComplexMatrix sz{{cdouble(1.0, 0.0), cdouble(0.0, 0.0)},
                         {cdouble(0.0, 0.0), cdouble(-1.0, 0.0)}};
        const ComplexMatrix conjugated = sz * Hk * sz;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) CHECK(conjugated(i, j) == -Hk(i, j));
        }
    }
}

TEST_CASE("parameter validation and unsupported Bloch requests") {
    CHECK_THROWS_AS(model::couplings(params(0, 0.1, 0.0, 0.0)), std::invalid_argument);
    {
        auto p = params(2, 0.1, 0.0, 0.0);
        p.t0 = 0.0;
        CHECK_THROWS_AS(model::couplings(p), std::invalid_argument);
    }
    CHECK_THROWS_AS(model::couplings(params(2, -0.1, 0.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(model::couplings(params(2, 3.5, 0.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(model::couplings(params(2, 0.1, -0.5, 0.0)), std::invalid_argument);
    {
        auto p = params(2, 0.1, 0.0, 0.0);
        p.onsite = {OnSiteKind::uniform_loss, -0.1};
        CHECK_THROWS_AS(model::build_open_chain(p), std::invalid_argument);
    }
    {
        auto p = params(2, 0.1, 0.0, 0.0);
        p.onsite = {OnSiteKind::uniform_loss, 0.1};
        CHECK_THROWS_AS(model::bloch_hamiltonian(p, 0.0), UnsupportedOnsite);
    }
    CHECK_THROWS_AS(model::bloch_hamiltonian(params(2, 0.1, 0.0, 0.0), 3.5),
                    std::invalid_argument);
}
