// dynamics.hpp: full master-equation integration used to audit the slow-driving results

#pragma once

#include "tricycle/lindblad.hpp"
#include "tricycle/protocol.hpp"

#include <vector>

namespace tricycle {

struct TrajectorySample {
    double t;
    DensityVector state;
    double omega;
    double U; // Tr[H rho]
};

// max(1000, ceil(50 tau gamma_max)) with gamma_max the largest relaxation
// rate gamma (2n + 1) along the branch.
int recommended_steps(const BranchProtocol& branch, double tau);

// Classic RK4 for d rho / dt = L(t) rho over [0, tau], rebuilding L at every
// stage. Returns steps + 1 uniformly spaced samples. Throws PositivityError
// if the state leaves the physical set by more than 1e-8.
std::vector<TrajectorySample> propagate(const BranchProtocol& branch, double tau, int steps,
                                        const DensityVector& initial);

// Q = Int Tr[H L rho] dt over the samples (Simpson rule; a 3/8 panel closes
// an odd interval count). Needs at least 1000 samples.
double heat_via_trajectory(const BranchProtocol& branch, double tau,
                           const std::vector<TrajectorySample>& samples);

} // namespace tricycle
