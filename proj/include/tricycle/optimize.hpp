// optimize.hpp: optimal time allocation and the derived operating regions
//
// Maximizing R at fixed psi under the energy balance sum_v Q_v = 0 and
// eliminating both multipliers leaves the stationarity condition
//     sum_v dS_v tau_v^2 / Sigma_v + 2 (tau_c + tau_h + tau_p) = 0,
// while the energy balance fixes tau_h as a function of (tau_c, tau_p). With
// tau_c as the free parameter both reduce to a scalar equation in tau_p.

#pragma once

#include "tricycle/cycle.hpp"

#include <optional>
#include <vector>

namespace tricycle {

struct AllocationSolution {
    double tau_c{0.0};
    double tau_h{0.0};
    double tau_p{0.0};
    double residual_constraint{0.0};
    double residual_energy{0.0};
    bool principal{false};
    CycleMetrics metrics;
};

struct SweepRecord {
    double alpha{0.0};
    double psi{0.0};
    double R{0.0};
    double chi{0.0};
    double tau_c{0.0};
    double tau_h{0.0};
    double tau_p{0.0};
};

SweepRecord to_record(double alpha, const AllocationSolution& sol);

struct AllocationScan {
    double tau_p_min{1e-2};
    double tau_p_max{1e5};
    int points{200};
};

std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

// tau_h closing the energy balance, or nullopt if the denominator is not positive.
std::optional<double> energy_balanced_tau_h(const CycleCoefficients& k, double tau_c, double tau_p);

// Left side of the stationarity condition.
double stationarity_residual(const CycleCoefficients& k, double tau_c, double tau_h, double tau_p);

// All energy-balanced stationary allocations at this tau_c, ordered by
// descending R; the first is marked principal. Throws ConvergenceError when
// no tau_p admits a positive tau_h or no sign change is bracketed, and
// DomainError when the dS/Sigma sign structure does not hold.
std::vector<AllocationSolution> solve_time_allocation(const CycleCoefficients& k, double tau_c,
                                                      const AllocationScan& scan = {});

struct CurveOptions {
    double tau_c_min{1.0};
    double tau_c_max{1e3};
    int points{200};
    AllocationScan scan{};
};

struct OptimalCurve {
    double alpha{0.0};
    std::vector<SweepRecord> records;        // principal allocations, sorted by psi
    std::vector<SweepRecord> by_tau_c;       // same records in grid order
    std::vector<double> failed_tau_c;        // solver found no allocation
    std::vector<double> non_cooling_tau_c;   // allocation exists but Q_c <= 0 or Q_h <= 0
};

OptimalCurve optimal_curve(const CycleCoefficients& k, double alpha,
                           const std::vector<double>& tau_c_grid, const AllocationScan& scan = {});

enum class Objective { cooling_rate, figure_of_merit };

struct OptimumPoint {
    double psi{0.0};
    double value{0.0};        // R_max or chi_max
    double coarse_value{0.0}; // best grid value before refinement
    AllocationSolution allocation;
};

OptimumPoint maximize_objective(const CycleCoefficients& k, double alpha, Objective objective,
                                const CurveOptions& opts = {});
OptimumPoint max_cooling_rate(const CycleCoefficients& k, double alpha, const CurveOptions& opts = {});
OptimumPoint max_figure_of_merit(const CycleCoefficients& k, double alpha, const CurveOptions& opts = {});

struct AlphaPoint {
    double alpha{0.0};
    OptimumPoint best_R;
    OptimumPoint best_chi;
};

struct AlphaSweep {
    std::vector<AlphaPoint> points;
    std::vector<double> failed_alpha;
    double alpha_R{0.0};
    double R_max{0.0};
    double alpha_chi{0.0};
    double chi_max{0.0};
};

AlphaSweep alpha_sweep(const TricycleConfig& config, const std::vector<double>& alpha_grid,
                       const CurveOptions& opts = {});

struct Envelope {
    std::vector<SweepRecord> records; // per reachable psi target: best alpha, R, chi = psi R
    std::vector<double> unreachable_psi;
    SweepRecord at_psi_R;   // maximum of the R envelope
    SweepRecord at_psi_chi; // maximum of the chi envelope
    double psi_R{0.0};
    double psi_chi{0.0};
};

// For each psi target, maximizes R over the alpha grid (at fixed psi the
// same alpha also maximizes chi = psi R).
Envelope envelope_curve(const TricycleConfig& config, const std::vector<double>& psi_grid,
                        const std::vector<double>& alpha_grid, const CurveOptions& opts = {});

// Exact principal allocation whose psi equals target, inverting psi(tau_c)
// along the curve by bisection; the highest-R crossing wins.
std::optional<AllocationSolution> allocation_at_psi(const CycleCoefficients& k,
                                                    const OptimalCurve& curve, double target,
                                                    const AllocationScan& scan = {});

struct ProfileRow {
    double psi;
    double tau_total;
    double tau_h_over_tau_p;
    double tau_c_over_tau_p;
};

struct TimeProfile {
    double alpha{0.0};
    std::vector<ProfileRow> rows;
    std::vector<double> unreachable_psi;
    bool tau_increasing{false};
    bool ratio_h_decreasing{false};
    bool ratio_c_decreasing{false};
};

TimeProfile time_allocation_profile(const TricycleConfig& config, const std::vector<double>& psi_grid,
                                    double alpha, const CurveOptions& opts = {});

// Largest relative difference of tau_total, tau_h/tau_p and tau_c/tau_p between
// rows of the two profiles at matching psi. NaN if no psi is shared.
double profile_gap(const TimeProfile& a, const TimeProfile& b);

struct FreeSweepEntry {
    double R;
    double tau_h;
    double energy_residual;
};

struct FreeSweep {
    std::vector<double> tau_c;
    std::vector<double> tau_p;
    // entries[i][j] for (tau_c[i], tau_p[j]); empty when no positive tau_h closes the balance
    std::vector<std::vector<std::optional<FreeSweepEntry>>> entries;

    struct Argmax {
        std::size_t i;
        std::size_t j;
        double R;
        bool interior;
    };
    std::optional<Argmax> argmax() const;
};

FreeSweep free_time_sweep(const CycleCoefficients& k, const std::vector<double>& tau_c_grid,
                          const std::vector<double>& tau_p_grid);

} // namespace tricycle
