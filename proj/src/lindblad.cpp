#include "tricycle/lindblad.hpp"

#include "tricycle/errors.hpp"

#include <cmath>
#include <sstream>

namespace tricycle {

namespace {

void check_positive(double temperature, double omega) {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw DomainError("temperature must be positive");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("frequency must be positive");
}

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

} // namespace

std::optional<std::string> DensityVector::violation(double tol) const {
    std::ostringstream os;
    if (std::abs(trace() - 1.0) > tol) {
        os << "trace " << trace() << " != 1";
        return os.str();
    }
    if (std::abs(v(0).imag()) > tol || std::abs(v(3).imag()) > tol) {
        os << "populations carry imaginary parts";
        return os.str();
    }
    if (std::abs(v(2) - std::conj(v(1))) > tol) {
        os << "rho01 != conj(rho10)";
        return os.str();
    }
    const double p1 = v(0).real();
    const double p0 = v(3).real();
    if (p1 < -tol || p1 > 1.0 + tol || p0 < -tol || p0 > 1.0 + tol) {
        os << "populations (" << p1 << ", " << p0 << ") outside [0, 1]";
        return os.str();
    }
    if (std::norm(v(1)) > p1 * p0 + tol) {
        os << "|rho10|^2 = " << std::norm(v(1)) << " exceeds rho11 rho00 = " << p1 * p0;
        return os.str();
    }
    return std::nullopt;
}

double bose_occupation(double temperature, double omega) {
    check_positive(temperature, omega);
    return 1.0 / std::expm1(omega / temperature);
}

double damping_rate(double gamma0, double alpha, double omega) {
    if (!(gamma0 > 0.0)) throw DomainError("gamma0 must be positive");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("frequency must be positive");
    return gamma0 * std::pow(omega, alpha);
}

double gibbs_excited_population(double temperature, double omega) {
    check_positive(temperature, omega);
    const double n = 1.0 / std::expm1(omega / temperature);
    return n / (2.0 * n + 1.0);
}

DensityVector gibbs_state(double temperature, double omega) {
    check_positive(temperature, omega);
    const double n = 1.0 / std::expm1(omega / temperature);
    const double z = 2.0 * n + 1.0;
    return DensityVector(n / z, 0.0, 0.0, (n + 1.0) / z);
}

Superoperator4 liouvillian(double temperature, double omega, double gamma0, double alpha) {
    const double n = bose_occupation(temperature, omega);
    const double g = damping_rate(gamma0, alpha, omega);
    const Complex i{0.0, 1.0};
    Superoperator4 L = Superoperator4::Zero();
    L(0, 0) = -g * (n + 1.0);
    L(0, 3) = g * n;
    L(1, 1) = -g * (n + 0.5) - i * omega;
    L(2, 2) = -g * (n + 0.5) + i * omega;
    L(3, 0) = g * (n + 1.0);
    L(3, 3) = -g * n;
    return L;
}

Superoperator4 drazin_inverse(double temperature, double omega, double gamma0, double alpha) {
    const double n = bose_occupation(temperature, omega);
    const double g = damping_rate(gamma0, alpha, omega);
    const double z2 = (2.0 * n + 1.0) * (2.0 * n + 1.0);
    const Complex i{0.0, 1.0};
    Superoperator4 D = Superoperator4::Zero();
    D(0, 0) = -(n + 1.0) / (g * z2);
    D(0, 3) = n / (g * z2);
    D(1, 1) = 1.0 / (-g * (n + 0.5) - i * omega);
    D(2, 2) = 1.0 / (-g * (n + 0.5) + i * omega);
    D(3, 0) = (n + 1.0) / (g * z2);
    D(3, 3) = -n / (g * z2);
    return D;
}

double mean_energy(const DensityVector& rho, double omega) {
    return 0.5 * omega * (rho.excited() - rho.ground());
}

double von_neumann_entropy(const DensityVector& rho) {
    // Eigenvalues of [[a, b], [conj b, d]]: (a + d)/2 +- sqrt(((a - d)/2)^2 + |b|^2)
    const double a = rho.excited();
    const double d = rho.ground();
    const double mean = 0.5 * (a + d);
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho.rho10()));
    return -(xlogx(mean + r) + xlogx(mean - r));
}

} // namespace tricycle
