#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tricycle/errors.hpp"
#include "tricycle/lindblad.hpp"

#include <cmath>
#include <random>

using namespace tricycle;
using Catch::Approx;

namespace {

struct Draw {
    double T, omega, gamma0, alpha;
};

Draw random_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {0.05 + 2.0 * u(rng), 0.05 + 5.0 * u(rng), 0.1 + 5.0 * u(rng), -0.5 + 2.0 * u(rng)};
}

} // namespace

TEST_CASE("Bose occupation", "[lindblad]") {
    CHECK(bose_occupation(1.0, std::log(2.0)) == Approx(1.0).epsilon(1e-14));
    CHECK(bose_occupation(1.0, 50.0) < 2e-22);
    CHECK(bose_occupation(1.0, 1.0) == Approx(0.5819767068693265).epsilon(1e-14));
    CHECK(bose_occupation(0.5, 1.0) > 0.0);
    CHECK_THROWS_AS(bose_occupation(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(bose_occupation(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(bose_occupation(1.0, -1.0), DomainError);
}

TEST_CASE("damping rate", "[lindblad]") {
    CHECK(damping_rate(1.3, 0.0, 7.0) == 1.3);
    CHECK(damping_rate(1.3, 0.8, 1.0) == 1.3);
    CHECK(damping_rate(1.0, 1.0, 2.0) == 2.0);
    CHECK_THROWS_AS(damping_rate(1.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(damping_rate(1.0, 0.5, -2.0), DomainError);
}

TEST_CASE("Gibbs state", "[lindblad]") {
    const auto g = gibbs_state(1.0, std::log(2.0));
    CHECK(g.excited() == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(g.ground() == Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(g.rho10() == Complex{0.0, 0.0});

    const auto cold = gibbs_state(1e-3, 1.0);
    CHECK(cold.excited() < 1e-300);
    CHECK(cold.ground() == 1.0);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto d = random_draw(rng);
        const auto s = gibbs_state(d.T, d.omega);
        CHECK(std::abs(s.excited() - 1.0 / (std::exp(d.omega / d.T) + 1.0)) < 1e-14);
        CHECK_FALSE(s.violation().has_value());
    }
}

TEST_CASE("Liouvillian structure", "[lindblad]") {
    const double T = 0.7, w = 1.3, g0 = 0.9, a = 0.4;
    const auto L = liouvillian(T, w, g0, a);
    const double n = bose_occupation(T, w);
    const double g = damping_rate(g0, a, w);
    CHECK(L(0, 0).real() == Approx(-g * (n + 1)).epsilon(1e-15));
    CHECK(L(0, 3).real() == Approx(g * n).epsilon(1e-15));
    CHECK(L(1, 1).imag() == Approx(-w).epsilon(1e-15));
    CHECK(L(2, 2).imag() == Approx(w).epsilon(1e-15));

    for (int col = 0; col < 4; ++col) CHECK(std::abs(L(0, col) + L(3, col)) < 1e-12);
    CHECK((L * gibbs_state(T, w).v).norm() < 1e-12);
}

TEST_CASE("Drazin inverse closed form", "[lindblad]") {
    const double T = 0.7, w = 1.3, g0 = 0.9, a = 0.4;
    const auto D = drazin_inverse(T, w, g0, a);
    const double n = bose_occupation(T, w);
    const double g = damping_rate(g0, a, w);
    CHECK(D(0, 0).real() == Approx(-(n + 1) / (g * (2 * n + 1) * (2 * n + 1))).epsilon(1e-14));
    const Complex c1 = 1.0 / Complex(-g * (n + 0.5), -w);
    const Complex c2 = 1.0 / Complex(-g * (n + 0.5), w);
    CHECK(std::abs(D(1, 1) - c1) < 1e-15);
    CHECK(std::abs(D(2, 2) - c2) < 1e-15);
    CHECK((D * gibbs_state(T, w).v).norm() < 1e-12);
}

TEST_CASE("Drazin identities on random draws", "[lindblad][property]") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const auto d = random_draw(rng);
        const auto L = liouvillian(d.T, d.omega, d.gamma0, d.alpha);
        const auto D = drazin_inverse(d.T, d.omega, d.gamma0, d.alpha);
        const double nL = oracle::max_abs(L);
        const double nD = oracle::max_abs(D);
        CHECK(oracle::max_abs(L * D * L - L) < 1e-10 * nL);
        CHECK(oracle::max_abs(D * L * D - D) < 1e-10 * nD);
        CHECK(oracle::max_abs(L * D - D * L) < 1e-10 * nL * nD);

        // Traceless population direction contracts to (-g, +g).
        Eigen::Vector4cd dir;
        dir << 1.0, 0.0, 0.0, -1.0;
        const Eigen::Vector4cd out = D * dir;
        const double n = bose_occupation(d.T, d.omega);
        const double gg = 1.0 / (damping_rate(d.gamma0, d.alpha, d.omega) * (2 * n + 1));
        CHECK(std::abs(out(0) - (-gg)) < 1e-12 * std::max(1.0, gg));
        CHECK(std::abs(out(3) - gg) < 1e-12 * std::max(1.0, gg));
    }
}

TEST_CASE("closed-form Drazin matches the spectral construction", "[lindblad][oracle]") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        const auto d = random_draw(rng);
        const auto L = liouvillian(d.T, d.omega, d.gamma0, d.alpha);
        const auto D = drazin_inverse(d.T, d.omega, d.gamma0, d.alpha);
        const auto S = oracle::spectral_drazin(L);
        CHECK(oracle::max_abs(D - S) < 1e-9);
    }
}

TEST_CASE("density vector invariants", "[lindblad]") {
    CHECK_FALSE(DensityVector(0.3, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.7).violation());
    CHECK(DensityVector(0.3, 0.0, 0.0, 0.6).violation());                           // trace
    CHECK(DensityVector(0.3, Complex(0.1, 0.2), Complex(0.1, 0.2), 0.7).violation()); // hermiticity
    CHECK(DensityVector(-0.1, 0.0, 0.0, 1.1).violation());                          // positivity
    CHECK(DensityVector(0.5, 0.6, 0.6, 0.5).violation());                           // coherence bound
}

TEST_CASE("von Neumann entropy", "[lindblad]") {
    CHECK(von_neumann_entropy(DensityVector(0.5, 0.0, 0.0, 0.5)) == Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(von_neumann_entropy(DensityVector(0.0, 0.0, 0.0, 1.0)) == 0.0);
    // A pure superposition has zero entropy.
    CHECK(std::abs(von_neumann_entropy(DensityVector(0.5, 0.5, 0.5, 0.5))) < 1e-12);
}
