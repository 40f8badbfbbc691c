#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tricycle::oracle {

Superoperator4 spectral_drazin(const Superoperator4& L, double zero_tol) {
    Eigen::ComplexEigenSolver<Superoperator4> es(L);
    const Eigen::Matrix4cd V = es.eigenvectors();
    Eigen::Vector4cd inv = Eigen::Vector4cd::Zero();
    const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    for (int i = 0; i < 4; ++i) {
        const Complex lam = es.eigenvalues()(i);
        if (std::abs(lam) > zero_tol * scale) inv(i) = 1.0 / lam;
    }
    return V * inv.asDiagonal() * V.inverse();
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// L^D(s) d rho_eq/ds(s), the bracketed vector of the heat formulas.
Eigen::Vector4cd lagged_direction(const BranchProtocol& branch, double s) {
    const double omega = branch.frequency_unchecked(s);
    const Superoperator4 D = drazin_inverse(branch.temperature(), omega, branch.gamma0(), branch.alpha());
    return D * gibbs_derivative_fd(branch, s);
}

Eigen::Vector4cd lagged_direction_derivative(const BranchProtocol& branch, double s) {
    constexpr double h = 1e-5;
    // One-sided at the ends so the stencil stays inside [0, 1].
    if (s < h) return (lagged_direction(branch, s + h) - lagged_direction(branch, s)) / h;
    if (s > 1.0 - h) return (lagged_direction(branch, s) - lagged_direction(branch, s - h)) / h;
    return (lagged_direction(branch, s + h) - lagged_direction(branch, s - h)) / (2.0 * h);
}

} // namespace

double composite_simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return sum * h / 3.0;
}

double simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 24);
}

Eigen::Vector4cd gibbs_derivative_fd(const BranchProtocol& branch, double s) {
    constexpr double h = 1e-3;
    // Evaluate the cosine schedule outside [0, 1] as well; it is smooth there.
    auto pop = [&](double x) {
        return gibbs_state(branch.temperature(), branch.frequency_unchecked(x)).excited();
    };
    const double dp = (-pop(s + 2 * h) + 8 * pop(s + h) - 8 * pop(s - h) + pop(s - 2 * h)) / (12 * h);
    Eigen::Vector4cd v;
    v << dp, 0.0, 0.0, -dp;
    return v;
}

double sigma_direct(const BranchProtocol& branch) {
    const double beta = 1.0 / branch.temperature();
    auto integrand = [&](double s) {
        const double omega = branch.frequency_unchecked(s);
        const Eigen::Vector4cd d = lagged_direction_derivative(branch, s);
        // Tr[H X] = (omega / 2)(X11 - X00)
        return 0.5 * omega * (d(0) - d(3)).real();
    };
    return beta * composite_simpson(integrand, 0.0, 1.0, 4000);
}

double q1_direct(const BranchProtocol& branch, double tau) {
    auto integrand = [&](double s) {
        const Eigen::Vector4cd d = lagged_direction_derivative(branch, s);
        // Tr{sigma_z X} = X11 - X00
        return branch.frequency_unchecked(s) * (d(0) - d(3)).real();
    };
    return composite_simpson(integrand, 0.0, 1.0, 4000) / (2.0 * tau);
}

double max_abs(const Superoperator4& m) { return m.cwiseAbs().maxCoeff(); }

TricycleConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    TricycleConfig::Params p;
    p.t_cold = in(0.05, 1.0);
    p.t_pump = p.t_cold * in(1.2, 4.0);
    p.t_hot = p.t_pump * in(1.2, 4.0);
    p.zeta_c = in(1.1, 4.0);
    p.zeta_h = in(1.1, 4.0);
    p.delta_c = in(0.05, 2.0);
    p.gamma0 = in(0.1, 5.0);
    p.alpha = in(-0.5, 1.5);
    return TricycleConfig(p);
}

} // namespace tricycle::oracle
