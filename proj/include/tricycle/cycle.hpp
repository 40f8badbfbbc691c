// cycle.hpp: six-step tricycle assembly, COP, cooling rate and reversible amplitude

#pragma once

#include "tricycle/protocol.hpp"
#include "tricycle/quadrature.hpp"
#include "tricycle/thermo.hpp"

#include <array>
#include <string>
#include <vector>

namespace tricycle {

// Per-branch dS_eq and Sigma, indexed c, h, p. Everything a cycle evaluation
// needs once the quadratures are done.
struct CycleCoefficients {
    std::array<double, 3> temperature{};
    std::array<double, 3> dS{};
    std::array<double, 3> Sigma{};

    static CycleCoefficients from(const TricycleConfig& config, const QuadratureSpec& quad = {});
};

struct CycleMetrics {
    BranchThermo cold;
    BranchThermo hot;
    BranchThermo pump;
    double psi{0.0};
    double R{0.0};
    double chi{0.0};
    double work_residual{0.0};
    double entropy_production{0.0};
    double total_time{0.0};
    // Q_c > 0 and Q_h > 0: the cycle refrigerates the cold bath.
    bool refrigerator{false};
    std::string invalid_reason;
};

CycleMetrics evaluate_cycle(const CycleCoefficients& coeffs, double tau_c, double tau_h, double tau_p);
CycleMetrics evaluate_cycle(const TricycleConfig& config, double tau_c, double tau_h, double tau_p);

double reversible_cop(double t_cold, double t_hot, double t_pump);

// Sum over branches of T_v dS_eq,v.
double zeroth_heat_sum(const TricycleConfig& config);

struct AmplitudeScan {
    double lo{0.01};
    double hi{2.0};
    int points{400};
};

// delta_c at which the zeroth-order heats balance; the delta_c of config is ignored.
double reversible_amplitude(const TricycleConfig& config, const AmplitudeScan& scan = {});

struct ZerothHeatPoint {
    double delta_c;
    double sum_Q0;
};

std::vector<ZerothHeatPoint> zeroth_heat_sum_curve(const TricycleConfig& config,
                                                   const std::vector<double>& delta_grid);

} // namespace tricycle
