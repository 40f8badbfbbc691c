#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tricycle/cycle.hpp"
#include "tricycle/errors.hpp"
#include "tricycle/optimize.hpp"

#include <cmath>
#include <random>

using namespace tricycle;
using Catch::Approx;

namespace {

// Gibbs entropy of a two-level system as a function of x = omega / T.
double entropy_of_x(double x) { return std::log1p(std::exp(-x)) + x / (std::exp(x) + 1.0); }

// Sum of T dS over the three strokes, from the endpoint frequencies alone.
double zeroth_sum_oracle(double tc, double th, double tp, double zc, double zh, double dc) {
    const double zp = (1.0 + zc * zh) / (zc + zh);
    const double dh = th * (zc - 1.0) / (tc * (1.0 + zh)) * dc;
    const double dp = tp * (zc + zh) / (tc * (1.0 + zh)) * dc;
    const double cold = entropy_of_x(dc * (zc - 1.0) / tc) - entropy_of_x(dc * (zc + 1.0) / tc);
    const double hot = entropy_of_x(dh * (zh - 1.0) / th) - entropy_of_x(dh * (zh + 1.0) / th);
    const double pump = entropy_of_x(dp * (zp + 1.0) / tp) - entropy_of_x(dp * (zp - 1.0) / tp);
    return tc * cold + th * hot + tp * pump;
}

} // namespace

TEST_CASE("reversible COP", "[cycle]") {
    CHECK(std::abs(reversible_cop(0.2, 1.0, 0.5) - 1.0 / 3.0) < 1e-15);
    CHECK(reversible_cop(1.0, 4.0, 2.0) == Approx(1.0 * 2.0 / (4.0 * 1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(reversible_cop(0.5, 1.0, 0.2), DomainError);
    CHECK_THROWS_AS(reversible_cop(0.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(reversible_cop(0.2, 0.5, 1.0), DomainError);
}

TEST_CASE("zeroth-order heat sum matches the endpoint oracle", "[cycle][oracle]") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 100; ++i) {
        const auto cfg = oracle::random_config(rng);
        const double expected = zeroth_sum_oracle(cfg.t_cold(), cfg.t_hot(), cfg.t_pump(), cfg.zeta_c(),
                                                  cfg.zeta_h(), cfg.delta_c());
        CHECK(std::abs(zeroth_heat_sum(cfg) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("reversible amplitude", "[cycle]") {
    const TricycleConfig cfg;
    const double dr = reversible_amplitude(cfg);
    CHECK(dr == Approx(0.3491912).margin(1e-6));
    CHECK(std::abs(zeroth_sum_oracle(0.2, 1.0, 0.5, 2.0, 2.0, dr)) < 1e-10);
    // The delta_c of the input config does not matter.
    CHECK(reversible_amplitude(cfg.with_delta_c(1.7)) == dr);
    CHECK_THROWS_AS(reversible_amplitude(cfg, {0.5, 2.0, 50}), ConvergenceError);
    CHECK_THROWS_AS(reversible_amplitude(cfg, {0.5, 0.4, 50}), DomainError);
}

TEST_CASE("zeroth heat curve changes sign once at the reversible amplitude", "[cycle]") {
    const TricycleConfig cfg;
    const auto grid = linear_grid(0.01, 2.0, 400);
    const auto curve = zeroth_heat_sum_curve(cfg, grid);
    REQUIRE(curve.size() == grid.size());
    int changes = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if ((curve[i - 1].sum_Q0 < 0.0) != (curve[i].sum_Q0 < 0.0)) ++changes;
    CHECK(changes == 1);
    CHECK(curve.front().sum_Q0 < 0.0);
    CHECK(curve.back().sum_Q0 > 0.0);
    CHECK_THROWS_AS(zeroth_heat_sum_curve(cfg, {0.3, 0.2}), DomainError);
    CHECK_THROWS_AS(zeroth_heat_sum_curve(cfg, {-0.1, 0.2}), DomainError);
}

TEST_CASE("energy-balanced cycle closes the work balance", "[cycle]") {
    const TricycleConfig cfg;
    const auto k = CycleCoefficients::from(cfg);
    const auto th = energy_balanced_tau_h(k, 9.0, 11.0);
    REQUIRE(th.has_value());
    const auto m = evaluate_cycle(k, 9.0, *th, 11.0);
    CHECK(std::abs(m.work_residual) < 1e-12);
    CHECK(m.refrigerator);
    CHECK(m.invalid_reason.empty());
    CHECK(m.psi == Approx(m.cold.Q / m.hot.Q).epsilon(1e-15));
    CHECK(m.R == Approx(m.cold.Q / (9.0 + *th + 11.0)).epsilon(1e-15));
    CHECK(m.chi == Approx(m.psi * m.R).epsilon(1e-15));
}

TEST_CASE("quasi-static limit at the reversible amplitude", "[cycle]") {
    const TricycleConfig cfg;
    const auto rev = cfg.with_delta_c(reversible_amplitude(cfg));
    const auto m = evaluate_cycle(rev, 1e9, 1e9, 1e9);
    CHECK(std::abs(m.psi - 1.0 / 3.0) < 1e-4);
    CHECK(std::abs(m.entropy_production) < 1e-8);
}

TEST_CASE("second law on random energy-balanced cycles", "[cycle][property]") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> logtau(0.0, 3.0);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        const auto cfg = oracle::random_config(rng);
        const auto k = CycleCoefficients::from(cfg);
        const double tc = std::pow(10.0, logtau(rng));
        const double tp = std::pow(10.0, logtau(rng));
        const auto th = energy_balanced_tau_h(k, tc, tp);
        if (!th) continue;
        const auto m = evaluate_cycle(k, tc, *th, tp);
        // With sum dS = 0 the production reduces to -sum Sigma_v / tau_v.
        const double identity = -(k.Sigma[0] / tc + k.Sigma[1] / *th + k.Sigma[2] / tp);
        CHECK(m.entropy_production == Approx(identity).margin(1e-10));
        CHECK(m.entropy_production >= -1e-10);
        if (m.refrigerator && m.pump.Q < 0.0) {
            ++checked;
            CHECK(m.psi <= reversible_cop(cfg.t_cold(), cfg.t_hot(), cfg.t_pump()) + 1e-10);
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("non-cooling cycles are flagged", "[cycle]") {
    const TricycleConfig cfg;
    const auto m = evaluate_cycle(cfg, 0.05, 0.05, 0.05);
    CHECK_FALSE(m.refrigerator);
    CHECK_FALSE(m.invalid_reason.empty());
}
