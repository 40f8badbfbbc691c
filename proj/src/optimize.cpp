#include "tricycle/optimize.hpp"

#include "tricycle/errors.hpp"
#include "tricycle/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace tricycle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_sign_structure(const CycleCoefficients& k) {
    const bool ok = k.dS[0] > 0.0 && k.dS[1] > 0.0 && k.dS[2] < 0.0 && k.Sigma[0] < 0.0 &&
                    k.Sigma[1] < 0.0 && k.Sigma[2] < 0.0;
    if (!ok) {
        std::ostringstream os;
        os << "stationarity condition needs dS_c, dS_h > 0, dS_p < 0 and all Sigma < 0; got dS = ("
           << k.dS[0] << ", " << k.dS[1] << ", " << k.dS[2] << "), Sigma = (" << k.Sigma[0] << ", "
           << k.Sigma[1] << ", " << k.Sigma[2] << ")";
        throw DomainError(os.str());
    }
}

// Golden-section maximization of f on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b,
                                     double tol = 1e-10) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

double objective_value(const CycleMetrics& m, Objective obj) {
    return obj == Objective::cooling_rate ? m.R : m.chi;
}

std::optional<AllocationSolution> principal_at(const CycleCoefficients& k, double tau_c,
                                               const AllocationScan& scan) {
    try {
        auto sols = solve_time_allocation(k, tau_c, scan);
        if (sols.empty() || !sols.front().metrics.refrigerator) return std::nullopt;
        return sols.front();
    } catch (const ConvergenceError&) {
        return std::nullopt;
    }
}

} // namespace

SweepRecord to_record(double alpha, const AllocationSolution& sol) {
    return {alpha, sol.metrics.psi, sol.metrics.R, sol.metrics.chi, sol.tau_c, sol.tau_h, sol.tau_p};
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) throw DomainError("invalid logarithmic grid");
    std::vector<double> g(static_cast<std::size_t>(points));
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < points; ++i) g[i] = std::exp(a + (b - a) * i / (points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (!(hi > lo) || points < 2) throw DomainError("invalid linear grid");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    g.back() = hi;
    return g;
}

std::optional<double> energy_balanced_tau_h(const CycleCoefficients& k, double tau_c, double tau_p) {
    const auto& T = k.temperature;
    const double den = T[2] * (k.dS[2] + k.Sigma[2] / tau_p) + T[0] * (k.dS[0] + k.Sigma[0] / tau_c) +
                       T[1] * k.dS[1];
    if (!(den > 0.0)) return std::nullopt;
    const double tau_h = -T[1] * k.Sigma[1] / den;
    if (!(tau_h > 0.0) || !std::isfinite(tau_h)) return std::nullopt;
    return tau_h;
}

double stationarity_residual(const CycleCoefficients& k, double tau_c, double tau_h, double tau_p) {
    return k.dS[1] * tau_h * tau_h / k.Sigma[1] + k.dS[2] * tau_p * tau_p / k.Sigma[2] +
           k.dS[0] * tau_c * tau_c / k.Sigma[0] + 2.0 * (tau_c + tau_h + tau_p);
}

std::vector<AllocationSolution> solve_time_allocation(const CycleCoefficients& k, double tau_c,
                                                      const AllocationScan& scan) {
    if (!(tau_c > 0.0)) throw DomainError("tau_c must be positive");
    check_sign_structure(k);

    auto F = [&](double tau_p) -> std::optional<double> {
        const auto tau_h = energy_balanced_tau_h(k, tau_c, tau_p);
        if (!tau_h) return std::nullopt;
        return stationarity_residual(k, tau_c, *tau_h, tau_p);
    };

    const auto grid = log_grid(scan.tau_p_min, scan.tau_p_max, scan.points);
    std::vector<std::optional<double>> values(grid.size());
    bool any_defined = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = F(grid[i]);
        any_defined = any_defined || values[i].has_value();
    }
    if (!any_defined) {
        std::ostringstream os;
        os << "no tau_p in [" << scan.tau_p_min << ", " << scan.tau_p_max
           << "] gives a positive energy-balanced tau_h at tau_c=" << tau_c;
        throw ConvergenceError(os.str());
    }

    std::vector<AllocationSolution> out;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!values[i] || !values[i + 1]) continue;
        const double fa0 = *values[i];
        const double fb0 = *values[i + 1];
        const bool root_at_a = fa0 == 0.0;
        const bool crosses = (fa0 < 0.0 && fb0 > 0.0) || (fa0 > 0.0 && fb0 < 0.0);
        if (!root_at_a && !crosses) continue;
        double a = grid[i];
        double b = grid[i + 1];
        double fa = fa0;
        if (fa != 0.0) {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const auto fm = F(mid);
                if (!fm) break; // F is defined on the whole bracket when both ends are
                if ((*fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = *fm;
                } else {
                    b = mid;
                }
            }
        }
        const double tau_p = (fa == 0.0) ? a : 0.5 * (a + b);
        const auto tau_h = energy_balanced_tau_h(k, tau_c, tau_p);
        if (!tau_h) continue;
        AllocationSolution sol;
        sol.tau_c = tau_c;
        sol.tau_h = *tau_h;
        sol.tau_p = tau_p;
        sol.residual_constraint = stationarity_residual(k, tau_c, *tau_h, tau_p);
        sol.metrics = evaluate_cycle(k, tau_c, *tau_h, tau_p);
        sol.residual_energy = -sol.metrics.work_residual;
        out.push_back(sol);
    }
    if (out.empty()) {
        std::ostringstream os;
        os << "stationarity condition has no sign change in tau_p at tau_c=" << tau_c;
        throw ConvergenceError(os.str());
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& x, const auto& y) { return x.metrics.R > y.metrics.R; });
    out.front().principal = true;
    return out;
}

OptimalCurve optimal_curve(const CycleCoefficients& k, double alpha,
                           const std::vector<double>& tau_c_grid, const AllocationScan& scan) {
    OptimalCurve curve;
    curve.alpha = alpha;
    for (double tau_c : tau_c_grid) {
        try {
            const auto sols = solve_time_allocation(k, tau_c, scan);
            const auto& p = sols.front();
            if (!p.metrics.refrigerator) {
                curve.non_cooling_tau_c.push_back(tau_c);
                continue;
            }
            curve.by_tau_c.push_back(to_record(alpha, p));
        } catch (const ConvergenceError&) {
            curve.failed_tau_c.push_back(tau_c);
        }
    }
    if (curve.by_tau_c.size() < 10) {
        std::ostringstream os;
        os << "optimal curve has only " << curve.by_tau_c.size() << " refrigerating points ("
           << curve.failed_tau_c.size() << " failed, " << curve.non_cooling_tau_c.size()
           << " non-cooling)";
        throw ConvergenceError(os.str());
    }
    curve.records = curve.by_tau_c;
    std::stable_sort(curve.records.begin(), curve.records.end(),
                     [](const auto& a, const auto& b) { return a.psi < b.psi; });
    return curve;
}

OptimumPoint maximize_objective(const CycleCoefficients& k, double alpha, Objective objective,
                                const CurveOptions& opts) {
    const auto grid = log_grid(opts.tau_c_min, opts.tau_c_max, opts.points);
    const auto curve = optimal_curve(k, alpha, grid, opts.scan);

    const auto best = std::max_element(curve.by_tau_c.begin(), curve.by_tau_c.end(),
                                       [&](const SweepRecord& a, const SweepRecord& b) {
                                           const double va = objective == Objective::cooling_rate ? a.R : a.chi;
                                           const double vb = objective == Objective::cooling_rate ? b.R : b.chi;
                                           return va < vb;
                                       });
    const auto pos = std::lower_bound(grid.begin(), grid.end(), best->tau_c);
    const std::size_t idx = static_cast<std::size_t>(pos - grid.begin());
    const double lo = grid[idx == 0 ? 0 : idx - 1];
    const double hi = grid[std::min(idx + 1, grid.size() - 1)];

    OptimumPoint out;
    auto coarse = principal_at(k, best->tau_c, opts.scan);
    if (!coarse) throw ConvergenceError("coarse optimum could not be re-solved");
    out.coarse_value = objective_value(coarse->metrics, objective);

    auto f = [&](double log_tau) {
        const auto sol = principal_at(k, std::exp(log_tau), opts.scan);
        return sol ? objective_value(sol->metrics, objective) : kNegInf;
    };
    const auto [x, fx] = golden_max(f, std::log(lo), std::log(hi));

    AllocationSolution chosen = *coarse;
    if (fx > out.coarse_value) {
        if (auto refined = principal_at(k, std::exp(x), opts.scan)) chosen = *refined;
    }
    out.allocation = chosen;
    out.value = objective_value(chosen.metrics, objective);
    out.psi = chosen.metrics.psi;
    return out;
}

OptimumPoint max_cooling_rate(const CycleCoefficients& k, double alpha, const CurveOptions& opts) {
    return maximize_objective(k, alpha, Objective::cooling_rate, opts);
}

OptimumPoint max_figure_of_merit(const CycleCoefficients& k, double alpha, const CurveOptions& opts) {
    return maximize_objective(k, alpha, Objective::figure_of_merit, opts);
}

AlphaSweep alpha_sweep(const TricycleConfig& config, const std::vector<double>& alpha_grid,
                       const CurveOptions& opts) {
    if (alpha_grid.size() < 3) throw DomainError("alpha grid needs at least three points");
    if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end()))
        throw DomainError("alpha grid must be sorted ascending");

    const auto results = parallel_map<std::optional<AlphaPoint>>(
        alpha_grid.size(), [&](std::size_t i) -> std::optional<AlphaPoint> {
            const double a = alpha_grid[i];
            try {
                const auto k = CycleCoefficients::from(config.with_alpha(a));
                return AlphaPoint{a, max_cooling_rate(k, a, opts), max_figure_of_merit(k, a, opts)};
            } catch (const ConvergenceError&) {
                return std::nullopt;
            } catch (const DomainError&) {
                return std::nullopt;
            }
        });

    AlphaSweep sweep;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i]) sweep.points.push_back(*results[i]);
        else sweep.failed_alpha.push_back(alpha_grid[i]);
    }
    if (sweep.points.size() < 3) throw ConvergenceError("alpha sweep produced fewer than three points");

    auto refine = [&](Objective obj, double& alpha_out, double& value_out) {
        auto value_of = [&](const AlphaPoint& p) {
            return obj == Objective::cooling_rate ? p.best_R.value : p.best_chi.value;
        };
        std::size_t best = 0;
        for (std::size_t i = 1; i < sweep.points.size(); ++i)
            if (value_of(sweep.points[i]) > value_of(sweep.points[best])) best = i;
        alpha_out = sweep.points[best].alpha;
        value_out = value_of(sweep.points[best]);
        if (best == 0 || best + 1 == sweep.points.size()) return; // edge of the window
        auto f = [&](double a) {
            try {
                const auto k = CycleCoefficients::from(config.with_alpha(a));
                return maximize_objective(k, a, obj, opts).value;
            } catch (const std::exception&) {
                return kNegInf;
            }
        };
        const auto [x, fx] = golden_max(f, sweep.points[best - 1].alpha, sweep.points[best + 1].alpha, 1e-6);
        if (fx >= value_out) {
            alpha_out = x;
            value_out = fx;
        }
    };
    refine(Objective::cooling_rate, sweep.alpha_R, sweep.R_max);
    refine(Objective::figure_of_merit, sweep.alpha_chi, sweep.chi_max);
    return sweep;
}

std::optional<AllocationSolution> allocation_at_psi(const CycleCoefficients& k,
                                                    const OptimalCurve& curve, double target,
                                                    const AllocationScan& scan) {
    std::optional<AllocationSolution> best;
    const auto& pts = curve.by_tau_c;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double g0 = pts[i].psi - target;
        const double g1 = pts[i + 1].psi - target;
        if (g0 == 0.0 || (g0 < 0.0) != (g1 < 0.0) || g1 == 0.0) {
            double a = std::log(pts[i].tau_c);
            double b = std::log(pts[i + 1].tau_c);
            double ga = g0;
            std::optional<AllocationSolution> at;
            if (g0 == 0.0) {
                at = principal_at(k, pts[i].tau_c, scan);
            } else if (g1 == 0.0) {
                at = principal_at(k, pts[i + 1].tau_c, scan);
            } else {
                bool broken = false;
                for (int it = 0; it < 100 && (b - a) > 1e-14; ++it) {
                    const double mid = 0.5 * (a + b);
                    const auto sol = principal_at(k, std::exp(mid), scan);
                    if (!sol) {
                        broken = true;
                        break;
                    }
                    const double gm = sol->metrics.psi - target;
                    if ((gm < 0.0) == (ga < 0.0)) {
                        a = mid;
                        ga = gm;
                    } else {
                        b = mid;
                    }
                    at = sol;
                }
                if (broken) continue;
                at = principal_at(k, std::exp(0.5 * (a + b)), scan);
            }
            if (at && (!best || at->metrics.R > best->metrics.R)) best = at;
        }
    }
    return best;
}

namespace {

// Linear interpolation of R at psi over every crossing of the curve; the
// largest value is the relevant branch.
std::optional<double> interpolated_R(const OptimalCurve& curve, double target) {
    std::optional<double> best;
    const auto& pts = curve.by_tau_c;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double p0 = pts[i].psi;
        const double p1 = pts[i + 1].psi;
        if ((target - p0) * (target - p1) > 0.0 || p0 == p1) continue;
        const double w = (target - p0) / (p1 - p0);
        const double R = pts[i].R + w * (pts[i + 1].R - pts[i].R);
        if (!best || R > *best) best = R;
    }
    return best;
}

} // namespace

Envelope envelope_curve(const TricycleConfig& config, const std::vector<double>& psi_grid_in,
                        const std::vector<double>& alpha_grid, const CurveOptions& opts) {
    if (alpha_grid.empty()) throw DomainError("alpha window is empty");
    const auto tau_grid = log_grid(opts.tau_c_min, opts.tau_c_max, opts.points);

    struct Member {
        CycleCoefficients k;
        OptimalCurve curve;
    };
    const auto members = parallel_map<std::optional<Member>>(
        alpha_grid.size(), [&](std::size_t i) -> std::optional<Member> {
            try {
                const auto k = CycleCoefficients::from(config.with_alpha(alpha_grid[i]));
                return Member{k, optimal_curve(k, alpha_grid[i], tau_grid, opts.scan)};
            } catch (const std::exception&) {
                return std::nullopt;
            }
        });

    std::vector<double> psi_grid = psi_grid_in;
    if (psi_grid.empty()) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& m : members) {
            if (!m) continue;
            lo = std::min(lo, m->curve.records.front().psi);
            hi = std::max(hi, m->curve.records.back().psi);
        }
        if (!(hi > lo)) throw ConvergenceError("no alpha in the window produced an optimal curve");
        psi_grid = linear_grid(lo, hi, 200);
    }

    Envelope env;
    const double psi_r = reversible_cop(config.t_cold(), config.t_hot(), config.t_pump());
    const auto rows = parallel_map<std::optional<SweepRecord>>(
        psi_grid.size(), [&](std::size_t j) -> std::optional<SweepRecord> {
            const double target = psi_grid[j];
            if (!(target > 0.0 && target < psi_r)) return std::nullopt;
            std::optional<double> best_R;
            std::size_t best_m = 0;
            for (std::size_t m = 0; m < members.size(); ++m) {
                if (!members[m]) continue;
                const auto R = interpolated_R(members[m]->curve, target);
                if (R && (!best_R || *R > *best_R)) {
                    best_R = R;
                    best_m = m;
                }
            }
            if (!best_R) return std::nullopt;
            const auto& mem = *members[best_m];
            const auto sol = allocation_at_psi(mem.k, mem.curve, target, opts.scan);
            if (!sol) return std::nullopt;
            return to_record(mem.curve.alpha, *sol);
        });
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j]) env.records.push_back(*rows[j]);
        else env.unreachable_psi.push_back(psi_grid[j]);
    }
    if (env.records.empty()) throw DomainError("no psi target is reachable by any alpha in the window");

    env.at_psi_R = *std::max_element(env.records.begin(), env.records.end(),
                                     [](const auto& a, const auto& b) { return a.R < b.R; });
    env.at_psi_chi = *std::max_element(env.records.begin(), env.records.end(),
                                       [](const auto& a, const auto& b) { return a.chi < b.chi; });
    env.psi_R = env.at_psi_R.psi;
    env.psi_chi = env.at_psi_chi.psi;
    return env;
}

TimeProfile time_allocation_profile(const TricycleConfig& config, const std::vector<double>& psi_grid,
                                    double alpha, const CurveOptions& opts) {
    TimeProfile prof;
    prof.alpha = alpha;
    const auto k = CycleCoefficients::from(config.with_alpha(alpha));
    const auto curve = optimal_curve(k, alpha, log_grid(opts.tau_c_min, opts.tau_c_max, opts.points), opts.scan);
    for (double psi : psi_grid) {
        const auto sol = allocation_at_psi(k, curve, psi, opts.scan);
        if (!sol) {
            prof.unreachable_psi.push_back(psi);
            continue;
        }
        prof.rows.push_back({sol->metrics.psi, sol->metrics.total_time, sol->tau_h / sol->tau_p,
                             sol->tau_c / sol->tau_p});
    }
    prof.tau_increasing = prof.ratio_h_decreasing = prof.ratio_c_decreasing = !prof.rows.empty();
    for (std::size_t i = 1; i < prof.rows.size(); ++i) {
        const auto& a = prof.rows[i - 1];
        const auto& b = prof.rows[i];
        prof.tau_increasing = prof.tau_increasing && b.tau_total > a.tau_total;
        prof.ratio_h_decreasing = prof.ratio_h_decreasing && b.tau_h_over_tau_p < a.tau_h_over_tau_p;
        prof.ratio_c_decreasing = prof.ratio_c_decreasing && b.tau_c_over_tau_p < a.tau_c_over_tau_p;
    }
    return prof;
}

double profile_gap(const TimeProfile& a, const TimeProfile& b) {
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
    double gap = std::numeric_limits<double>::quiet_NaN();
    std::size_t j = 0;
    for (const auto& ra : a.rows) {
        while (j < b.rows.size() && b.rows[j].psi < ra.psi * (1.0 - 1e-8)) ++j;
        if (j == b.rows.size()) break;
        const auto& rb = b.rows[j];
        if (std::abs(rb.psi - ra.psi) > 1e-8 * ra.psi) continue;
        const double g = std::max({rel(ra.tau_total, rb.tau_total), rel(ra.tau_h_over_tau_p, rb.tau_h_over_tau_p),
                                   rel(ra.tau_c_over_tau_p, rb.tau_c_over_tau_p)});
        gap = std::isnan(gap) ? g : std::max(gap, g);
    }
    return gap;
}

FreeSweep free_time_sweep(const CycleCoefficients& k, const std::vector<double>& tau_c_grid,
                          const std::vector<double>& tau_p_grid) {
    for (double t : tau_c_grid)
        if (!(t > 0.0)) throw DomainError("tau_c grid must be positive");
    for (double t : tau_p_grid)
        if (!(t > 0.0)) throw DomainError("tau_p grid must be positive");
    FreeSweep sweep;
    sweep.tau_c = tau_c_grid;
    sweep.tau_p = tau_p_grid;
    sweep.entries.assign(tau_c_grid.size(), std::vector<std::optional<FreeSweepEntry>>(tau_p_grid.size()));
    for (std::size_t i = 0; i < tau_c_grid.size(); ++i) {
        for (std::size_t j = 0; j < tau_p_grid.size(); ++j) {
            const auto tau_h = energy_balanced_tau_h(k, tau_c_grid[i], tau_p_grid[j]);
            if (!tau_h) continue;
            const auto m = evaluate_cycle(k, tau_c_grid[i], *tau_h, tau_p_grid[j]);
            sweep.entries[i][j] = FreeSweepEntry{m.R, *tau_h, -m.work_residual};
        }
    }
    return sweep;
}

std::optional<FreeSweep::Argmax> FreeSweep::argmax() const {
    std::optional<Argmax> best;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = 0; j < entries[i].size(); ++j) {
            const auto& e = entries[i][j];
            if (e && (!best || e->R > best->R)) best = Argmax{i, j, e->R, false};
        }
    }
    if (best) {
        best->interior = best->i > 0 && best->i + 1 < entries.size() && best->j > 0 &&
                         best->j + 1 < entries[best->i].size();
    }
    return best;
}

} // namespace tricycle
