// lindblad.hpp: vectorized two-level Liouvillian, Gibbs state and Drazin inverse
//
// Vectorization order is (rho11, rho10, rho01, rho00) with |1> the excited
// level of H = omega sigma_z / 2. The dissipator is the thermal amplitude
// damping channel with rate gamma = gamma0 omega^alpha and Bose occupation
// n = 1 / (exp(omega / T) - 1).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>

namespace tricycle {

using Complex = std::complex<double>;
using Superoperator4 = Eigen::Matrix4cd;

struct DensityVector {
    Eigen::Vector4cd v{Eigen::Vector4cd::Zero()};

    DensityVector() = default;
    explicit DensityVector(const Eigen::Vector4cd& vec) : v(vec) {}
    DensityVector(Complex rho11, Complex rho10, Complex rho01, Complex rho00) {
        v << rho11, rho10, rho01, rho00;
    }

    Complex rho11() const { return v(0); }
    Complex rho10() const { return v(1); }
    Complex rho01() const { return v(2); }
    Complex rho00() const { return v(3); }

    double excited() const { return v(0).real(); }
    double ground() const { return v(3).real(); }
    double trace() const { return (v(0) + v(3)).real(); }

    // Description of the first violated invariant (trace, hermiticity,
    // positivity), or nullopt when the state is physical within tol.
    std::optional<std::string> violation(double tol = 1e-12) const;
};

double bose_occupation(double temperature, double omega);
double damping_rate(double gamma0, double alpha, double omega);

// Excited-state population 1 / (exp(omega / T) + 1) of the Gibbs state.
double gibbs_excited_population(double temperature, double omega);

DensityVector gibbs_state(double temperature, double omega);

Superoperator4 liouvillian(double temperature, double omega, double gamma0, double alpha);
Superoperator4 drazin_inverse(double temperature, double omega, double gamma0, double alpha);

// Mean energy Tr[H rho] with H = omega sigma_z / 2.
double mean_energy(const DensityVector& rho, double omega);

// -Tr[rho ln rho] of the 2x2 density matrix.
double von_neumann_entropy(const DensityVector& rho);

} // namespace tricycle
