#include "tricycle/dynamics.hpp"

#include "tricycle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tricycle {

namespace {

Superoperator4 generator_at(const BranchProtocol& branch, double tau, double t) {
    const double s = std::clamp(t / tau, 0.0, 1.0);
    return liouvillian(branch.temperature(), branch.frequency_unchecked(s), branch.gamma0(),
                       branch.alpha());
}

} // namespace

int recommended_steps(const BranchProtocol& branch, double tau) {
    double gamma_max = 0.0;
    constexpr int kProbe = 1000;
    for (int k = 0; k <= kProbe; ++k) {
        const double omega = branch.frequency_unchecked(static_cast<double>(k) / kProbe);
        const double n = bose_occupation(branch.temperature(), omega);
        gamma_max = std::max(gamma_max, damping_rate(branch.gamma0(), branch.alpha(), omega) * (2.0 * n + 1.0));
    }
    return std::max(1000, static_cast<int>(std::ceil(50.0 * tau * gamma_max)));
}

std::vector<TrajectorySample> propagate(const BranchProtocol& branch, double tau, int steps,
                                        const DensityVector& initial) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    if (steps < 1000) throw DomainError("propagate needs at least 1000 steps");
    if (auto bad = initial.violation(1e-12)) throw DomainError("initial state is unphysical: " + *bad);

    const double dt = tau / steps;
    std::vector<TrajectorySample> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);

    Eigen::Vector4cd rho = initial.v;
    auto record = [&](double t) {
        const double omega = branch.frequency_unchecked(std::clamp(t / tau, 0.0, 1.0));
        DensityVector st(rho);
        out.push_back({t, st, omega, mean_energy(st, omega)});
    };
    record(0.0);

    for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        const Superoperator4 L0 = generator_at(branch, tau, t);
        const Superoperator4 Lh = generator_at(branch, tau, t + 0.5 * dt);
        const Superoperator4 L1 = generator_at(branch, tau, t + dt);
        const Eigen::Vector4cd k1 = L0 * rho;
        const Eigen::Vector4cd k2 = Lh * (rho + 0.5 * dt * k1);
        const Eigen::Vector4cd k3 = Lh * (rho + 0.5 * dt * k2);
        const Eigen::Vector4cd k4 = L1 * (rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (auto bad = DensityVector(rho).violation(1e-8)) {
            std::ostringstream os;
            os << "integration left the physical set at t=" << (k + 1) * dt << " (" << *bad
               << "); reduce the step size";
            throw PositivityError(os.str());
        }
        record(k + 1 == steps ? tau : (k + 1) * dt);
    }
    return out;
}

double heat_via_trajectory(const BranchProtocol& branch, double tau,
                           const std::vector<TrajectorySample>& samples) {
    if (samples.size() < 1000) throw DomainError("heat_via_trajectory needs at least 1000 samples");

    std::vector<double> power(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& smp = samples[i];
        const Superoperator4 L = generator_at(branch, tau, smp.t);
        const DensityVector drho(L * smp.state.v);
        power[i] = mean_energy(drho, smp.omega);
    }

    const std::size_t intervals = samples.size() - 1;
    const double h = samples[1].t - samples[0].t;
    const std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
    double q = 0.0;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
        q += h / 3.0 * (power[i] + 4.0 * power[i + 1] + power[i + 2]);
    if (simpson_end != intervals) {
        const std::size_t i = simpson_end;
        q += 3.0 * h / 8.0 * (power[i] + 3.0 * power[i + 1] + 3.0 * power[i + 2] + power[i + 3]);
    }
    return q;
}

} // namespace tricycle
