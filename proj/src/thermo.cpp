#include "tricycle/thermo.hpp"

#include "tricycle/errors.hpp"

#include <cmath>
#include <sstream>

namespace tricycle {

namespace {

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

void check_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("branch duration tau must be positive");
}

void check_s(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("rescaled time s must lie in [0, 1]");
}

} // namespace

double equilibrium_entropy(double temperature, double omega) {
    const double p = gibbs_excited_population(temperature, omega);
    return -(xlogx(p) + xlogx(1.0 - p));
}

double branch_entropy_change(const BranchProtocol& branch) {
    const double T = branch.temperature();
    return equilibrium_entropy(T, branch.frequency(1.0)) - equilibrium_entropy(T, branch.frequency(0.0));
}

double sigma_coefficient(const BranchProtocol& branch, const QuadratureSpec& quad) {
    if (branch.delta() == 0.0) return 0.0;
    const double T = branch.temperature();
    const double beta = 1.0 / T;
    auto integrand = [&](double s) {
        const double omega = branch.frequency_unchecked(s);
        const double dw = branch.frequency_derivative_unchecked(s);
        const double n = 1.0 / std::expm1(omega * beta);
        const double z = 2.0 * n + 1.0;
        const double gamma = branch.gamma0() * std::pow(omega, branch.alpha());
        return dw * dw * n * (n + 1.0) / (gamma * z * z * z);
    };
    return -beta * beta * integrate(integrand, 0.0, 1.0, quad).value;
}

BranchThermo branch_heat_from(double temperature, double dS_eq, double Sigma, double tau) {
    check_tau(tau);
    BranchThermo out;
    out.dS_eq = dS_eq;
    out.Sigma = Sigma;
    out.Q0 = temperature * dS_eq;
    out.Q1 = temperature * Sigma / tau;
    out.Q = out.Q0 + out.Q1;
    out.tau = tau;
    return out;
}

BranchThermo branch_heat(const BranchProtocol& branch, double tau, const QuadratureSpec& quad) {
    check_tau(tau);
    return branch_heat_from(branch.temperature(), branch_entropy_change(branch),
                            sigma_coefficient(branch, quad), tau);
}

DensityVector gibbs_state_derivative(const BranchProtocol& branch, double s) {
    check_s(s);
    const double T = branch.temperature();
    const double omega = branch.frequency(s);
    const double dw = branch.frequency_derivative(s);
    // p = n / (2n + 1), dp/dx = -n (n + 1) / (2n + 1)^2, dx/ds = omega' / T
    const double n = bose_occupation(T, omega);
    const double z = 2.0 * n + 1.0;
    const double dp = -n * (n + 1.0) / (z * z) * dw / T;
    return DensityVector(dp, 0.0, 0.0, -dp);
}

DensityVector perturbed_state(const BranchProtocol& branch, double s, double tau) {
    check_s(s);
    check_tau(tau);
    const double T = branch.temperature();
    const double omega = branch.frequency(s);
    const DensityVector eq = gibbs_state(T, omega);
    const DensityVector deq = gibbs_state_derivative(branch, s);
    const Superoperator4 D = drazin_inverse(T, omega, branch.gamma0(), branch.alpha());
    DensityVector out(eq.v + (D * deq.v) / tau);
    if (auto bad = out.violation(1e-12)) {
        std::ostringstream os;
        os << "first-order state at s=" << s << ", tau=" << tau << " is unphysical (" << *bad
           << "); tau is too short for the slow-driving expansion";
        throw PositivityError(os.str());
    }
    return out;
}

EffectiveTemperature effective_temperature(const DensityVector& state, double omega) {
    if (!(omega > 0.0)) throw DomainError("frequency must be positive");
    const double p1 = state.excited();
    const double p0 = state.ground();
    if (!(p1 > 0.0) || !(p0 > 0.0))
        throw DomainError("effective temperature needs both populations positive");
    const double log_ratio = std::log(p0 / p1);
    if (log_ratio == 0.0) throw DomainError("equal populations: effective temperature is undefined");
    return {omega / log_ratio, log_ratio < 0.0};
}

std::vector<TSPoint> ts_trajectory(const TricycleConfig& config, const std::array<double, 3>& taus,
                                   int samples_per_branch) {
    if (samples_per_branch < 2) throw DomainError("samples_per_branch must be at least 2");
    const auto branches = make_branches(config);
    std::vector<TSPoint> out;
    out.reserve(3 * static_cast<std::size_t>(samples_per_branch));
    for (std::size_t b = 0; b < 3; ++b) {
        for (int k = 0; k < samples_per_branch; ++k) {
            const double s = static_cast<double>(k) / (samples_per_branch - 1);
            const DensityVector rho = perturbed_state(branches[b], s, taus[b]);
            const double omega = branches[b].frequency(s);
            out.push_back({effective_temperature(rho, omega).value, von_neumann_entropy(rho),
                           branches[b].reservoir(), s});
        }
    }
    return out;
}

} // namespace tricycle
