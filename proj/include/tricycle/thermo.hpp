// thermo.hpp: slow-driving heats, dissipation coefficients and T-S trajectories
//
// To first order in 1/tau the state along a branch is
//     rho(s) = rho_eq(s) + (1/tau) L^D(s) d rho_eq / ds,
// which gives the quasi-static heat Q0 = T dS_eq and the irreversible
// correction Q1 = T Sigma / tau with
//     Sigma = -beta^2 Int_0^1 omega'(s)^2 n (n + 1) / (gamma (2n + 1)^3) ds <= 0.

#pragma once

#include "tricycle/lindblad.hpp"
#include "tricycle/protocol.hpp"
#include "tricycle/quadrature.hpp"

#include <array>
#include <vector>

namespace tricycle {

struct BranchThermo {
    double dS_eq{0.0};
    double Sigma{0.0};
    double Q0{0.0};
    double Q1{0.0};
    double Q{0.0};
    double tau{0.0};
};

// Binary entropy of the Gibbs populations at (T, omega).
double equilibrium_entropy(double temperature, double omega);

// S_eq(omega(1)) - S_eq(omega(0)) along the branch.
double branch_entropy_change(const BranchProtocol& branch);

double sigma_coefficient(const BranchProtocol& branch, const QuadratureSpec& quad = {});

BranchThermo branch_heat(const BranchProtocol& branch, double tau, const QuadratureSpec& quad = {});

// Builds the BranchThermo from precomputed dS_eq and Sigma.
BranchThermo branch_heat_from(double temperature, double dS_eq, double Sigma, double tau);

// d rho_eq / ds, using dn/dx = -n (n + 1) with x = omega / T.
DensityVector gibbs_state_derivative(const BranchProtocol& branch, double s);

// First-order slow-driving state. Throws PositivityError if the correction
// pushes the state out of the physical set (tau too short).
DensityVector perturbed_state(const BranchProtocol& branch, double s, double tau);

struct EffectiveTemperature {
    double value;
    bool population_inverted;
};

// T_eff = omega / ln(rho00 / rho11). Equal populations throw DomainError.
EffectiveTemperature effective_temperature(const DensityVector& state, double omega);

struct TSPoint {
    double t_eff;
    double entropy;
    Reservoir reservoir;
    double s;
};

// Samples (T_eff, S) along the three branches in cycle order c, h, p. The
// quench between consecutive branches is the straight segment joining the
// last point of one branch to the first of the next; the path closes from
// the final pump point back to the first cold point.
std::vector<TSPoint> ts_trajectory(const TricycleConfig& config, const std::array<double, 3>& taus,
                                   int samples_per_branch);

} // namespace tricycle
