#include "tricycle/cycle.hpp"

#include "tricycle/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tricycle {

CycleCoefficients CycleCoefficients::from(const TricycleConfig& config, const QuadratureSpec& quad) {
    CycleCoefficients c;
    const auto branches = make_branches(config);
    for (std::size_t i = 0; i < 3; ++i) {
        c.temperature[i] = branches[i].temperature();
        c.dS[i] = branch_entropy_change(branches[i]);
        c.Sigma[i] = sigma_coefficient(branches[i], quad);
    }
    return c;
}

CycleMetrics evaluate_cycle(const CycleCoefficients& k, double tau_c, double tau_h, double tau_p) {
    CycleMetrics m;
    m.cold = branch_heat_from(k.temperature[0], k.dS[0], k.Sigma[0], tau_c);
    m.hot = branch_heat_from(k.temperature[1], k.dS[1], k.Sigma[1], tau_h);
    m.pump = branch_heat_from(k.temperature[2], k.dS[2], k.Sigma[2], tau_p);

    m.total_time = tau_c + tau_h + tau_p;
    m.psi = m.hot.Q != 0.0 ? m.cold.Q / m.hot.Q : std::numeric_limits<double>::quiet_NaN();
    m.R = m.cold.Q / m.total_time;
    m.chi = m.psi * m.R;
    m.work_residual = -(m.cold.Q + m.hot.Q + m.pump.Q);
    m.entropy_production =
        -(m.cold.Q / k.temperature[0] + m.hot.Q / k.temperature[1] + m.pump.Q / k.temperature[2]);

    m.refrigerator = m.cold.Q > 0.0 && m.hot.Q > 0.0;
    if (m.hot.Q <= 0.0)
        m.invalid_reason = "Q_h <= 0: the hot bath does not drive the cycle";
    else if (m.cold.Q <= 0.0)
        m.invalid_reason = "Q_c <= 0: no heat is extracted from the cold bath";
    return m;
}

CycleMetrics evaluate_cycle(const TricycleConfig& config, double tau_c, double tau_h, double tau_p) {
    return evaluate_cycle(CycleCoefficients::from(config), tau_c, tau_h, tau_p);
}

double reversible_cop(double t_cold, double t_hot, double t_pump) {
    if (!(t_cold > 0.0 && t_cold < t_pump && t_pump < t_hot))
        throw DomainError("reversible COP needs 0 < T_c < T_p < T_h");
    return t_cold * (t_hot - t_pump) / (t_hot * (t_pump - t_cold));
}

double zeroth_heat_sum(const TricycleConfig& config) {
    double sum = 0.0;
    for (const auto& b : make_branches(config)) sum += b.temperature() * branch_entropy_change(b);
    return sum;
}

std::vector<ZerothHeatPoint> zeroth_heat_sum_curve(const TricycleConfig& config,
                                                   const std::vector<double>& delta_grid) {
    std::vector<ZerothHeatPoint> out;
    out.reserve(delta_grid.size());
    double prev = -std::numeric_limits<double>::infinity();
    for (double d : delta_grid) {
        if (!(d > 0.0)) throw DomainError("delta_c grid values must be positive");
        if (!(d > prev)) throw DomainError("delta_c grid must be sorted ascending");
        prev = d;
        out.push_back({d, zeroth_heat_sum(config.with_delta_c(d))});
    }
    return out;
}

double reversible_amplitude(const TricycleConfig& config, const AmplitudeScan& scan) {
    if (scan.points < 2 || !(scan.lo > 0.0) || !(scan.hi > scan.lo))
        throw DomainError("invalid delta_c scan interval");
    auto f = [&](double d) { return zeroth_heat_sum(config.with_delta_c(d)); };

    double a = scan.lo;
    double fa = f(a);
    for (int i = 1; i < scan.points; ++i) {
        double b = scan.lo + (scan.hi - scan.lo) * i / (scan.points - 1);
        const double fb = f(b);
        if (fa == 0.0) return a;
        if (fa < 0.0 && fb >= 0.0) {
            // Bisect to the resolution of double; the 1e-8 bracket alone leaves
            // a root residual near 1e-9.
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const double fm = f(mid);
                if (fm < 0.0) a = mid;
                else b = mid;
            }
            return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
        }
        a = b;
        fa = fb;
    }

    std::ostringstream os;
    os << "sum of zeroth-order heats has no sign change on [" << scan.lo << ", " << scan.hi
       << "]: f(lo)=" << f(scan.lo) << ", f(hi)=" << f(scan.hi);
    throw ConvergenceError(os.str());
}

} // namespace tricycle
