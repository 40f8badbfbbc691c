#include "tricycle/cli.hpp"

#include "tricycle/cycle.hpp"
#include "tricycle/dynamics.hpp"
#include "tricycle/errors.hpp"
#include "tricycle/optimize.hpp"
#include "tricycle/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <filesystem>
#include <sstream>

namespace tricycle {

namespace {

Cell num(double v) { return Cell{v}; }
Cell text(std::string_view s) { return Cell{std::string(s)}; }
Cell flag(bool b) { return Cell{static_cast<long long>(b ? 1 : 0)}; }

QuadratureSpec quad_of(const RunConfig& c) {
    QuadratureSpec q;
    q.rel_tol = c.quad_rel_tol;
    return q;
}

CurveOptions curve_of(const RunConfig& c) {
    CurveOptions o;
    o.tau_c_min = c.curve_tau_c_min;
    o.tau_c_max = c.curve_tau_c_max;
    o.points = c.curve_tau_c_points;
    o.scan = {c.scan_tau_p_min, c.scan_tau_p_max, c.scan_tau_p_points};
    return o;
}

std::vector<double> alpha_grid_of(const RunConfig& c) {
    return linear_grid(c.alpha_min, c.alpha_max, c.alpha_points);
}

const std::vector<std::string> kRecordColumns = {"alpha", "psi", "R", "chi", "tau_c", "tau_h", "tau_p"};

std::vector<Cell> record_row(const SweepRecord& r) {
    return {num(r.alpha), num(r.psi), num(r.R), num(r.chi), num(r.tau_c), num(r.tau_h), num(r.tau_p)};
}

std::string list_points(const char* what, const std::vector<double>& pts) {
    std::ostringstream os;
    os << what << ":";
    for (double p : pts) os << ' ' << format_number(p);
    return os.str();
}

double balanced_or_given_tau_h(const RunConfig& c, const CycleCoefficients& k) {
    if (c.tau_h) return *c.tau_h;
    const auto th = energy_balanced_tau_h(k, c.tau_c, c.tau_p);
    if (!th) {
        std::ostringstream os;
        os << "no positive tau_h balances the energy at tau_c=" << c.tau_c << ", tau_p=" << c.tau_p
           << "; set tau_h explicitly";
        throw ConvergenceError(os.str());
    }
    return *th;
}

Report report_branch(const RunConfig& c) {
    Report rep;
    rep.columns = {"reservoir", "T", "delta", "zeta", "phase", "tau", "dS_eq", "Sigma", "Q0", "Q1", "Q"};
    const auto cfg = c.tricycle();
    const auto k = CycleCoefficients::from(cfg, quad_of(c));
    const double tau_h = balanced_or_given_tau_h(c, k);
    const std::array<double, 3> taus{c.tau_c, tau_h, c.tau_p};
    const auto branches = make_branches(cfg);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& b = branches[i];
        const auto t = branch_heat_from(b.temperature(), k.dS[i], k.Sigma[i], taus[i]);
        rep.rows.push_back({text(to_string(b.reservoir())), num(b.temperature()), num(b.delta()), num(b.zeta()),
                            text(to_string(b.phase())), num(t.tau), num(t.dS_eq), num(t.Sigma), num(t.Q0),
                            num(t.Q1), num(t.Q)});
    }
    rep.grids["tau_h_source"] = c.tau_h ? "config" : "energy_balance";
    return rep;
}

Report report_cycle(const RunConfig& c) {
    Report rep;
    rep.columns = {"tau_c", "tau_h", "tau_p", "Q_c", "Q_h", "Q_p", "psi", "R", "chi", "work_residual",
                   "entropy_production", "psi_r", "refrigerator"};
    const auto cfg = c.tricycle();
    const auto k = CycleCoefficients::from(cfg, quad_of(c));
    const double tau_h = balanced_or_given_tau_h(c, k);
    const auto m = evaluate_cycle(k, c.tau_c, tau_h, c.tau_p);
    rep.rows.push_back({num(c.tau_c), num(tau_h), num(c.tau_p), num(m.cold.Q), num(m.hot.Q), num(m.pump.Q),
                        num(m.psi), num(m.R), num(m.chi), num(m.work_residual), num(m.entropy_production),
                        num(reversible_cop(cfg.t_cold(), cfg.t_hot(), cfg.t_pump())), flag(m.refrigerator)});
    if (!m.refrigerator) rep.summary.emplace_back("invalid_reason", text(m.invalid_reason));
    rep.grids["tau_h_source"] = c.tau_h ? "config" : "energy_balance";
    return rep;
}

Report report_ts(const RunConfig& c) {
    Report rep;
    rep.columns = {"reservoir", "s", "T_eff", "S"};
    const auto cfg = c.tricycle();
    const auto k = CycleCoefficients::from(cfg, quad_of(c));
    const double tau_h = balanced_or_given_tau_h(c, k);
    for (const auto& p : ts_trajectory(cfg, {c.tau_c, tau_h, c.tau_p}, c.samples_per_branch))
        rep.rows.push_back({text(to_string(p.reservoir)), num(p.s), num(p.t_eff), num(p.entropy)});
    rep.grids["samples_per_branch"] = c.samples_per_branch;
    rep.grids["taus"] = {c.tau_c, tau_h, c.tau_p};
    return rep;
}

Report report_sweep_times(const RunConfig& c) {
    Report rep;
    rep.columns = {"tau_c", "tau_p", "tau_h", "R", "energy_residual"};
    const auto k = CycleCoefficients::from(c.tricycle(), quad_of(c));
    const auto sweep = free_time_sweep(k, log_grid(c.sweep_tau_c_min, c.sweep_tau_c_max, c.sweep_tau_c_points),
                                       log_grid(c.sweep_tau_p_min, c.sweep_tau_p_max, c.sweep_tau_p_points));
    long long absent = 0;
    for (std::size_t i = 0; i < sweep.tau_c.size(); ++i) {
        for (std::size_t j = 0; j < sweep.tau_p.size(); ++j) {
            const auto& e = sweep.entries[i][j];
            if (e) {
                rep.rows.push_back({num(sweep.tau_c[i]), num(sweep.tau_p[j]), num(e->tau_h), num(e->R),
                                    num(e->energy_residual)});
            } else {
                ++absent;
                rep.rows.push_back({num(sweep.tau_c[i]), num(sweep.tau_p[j]), Cell{}, Cell{}, Cell{}});
            }
        }
    }
    if (const auto best = sweep.argmax()) {
        rep.summary.emplace_back("R_max", num(best->R));
        rep.summary.emplace_back("tau_c_at_R_max", num(sweep.tau_c[best->i]));
        rep.summary.emplace_back("tau_p_at_R_max", num(sweep.tau_p[best->j]));
        rep.summary.emplace_back("interior_maximum", flag(best->interior));
    }
    rep.summary.emplace_back("absent_entries", Cell{absent});
    rep.grids["tau_h_rule"] = "energy_balance";
    return rep;
}

Report report_optimal_curve(const RunConfig& c) {
    Report rep;
    rep.columns = kRecordColumns;
    const auto cfg = c.tricycle();
    const auto k = CycleCoefficients::from(cfg, quad_of(c));
    const auto opts = curve_of(c);
    const auto curve = optimal_curve(k, cfg.alpha(), log_grid(opts.tau_c_min, opts.tau_c_max, opts.points), opts.scan);
    for (const auto& r : curve.records) rep.rows.push_back(record_row(r));
    const auto bR = max_cooling_rate(k, cfg.alpha(), opts);
    const auto bX = max_figure_of_merit(k, cfg.alpha(), opts);
    rep.summary = {{"psi_alpha_R", num(bR.psi)},     {"R_alpha_max", num(bR.value)},
                   {"psi_alpha_chi", num(bX.psi)},   {"chi_alpha_max", num(bX.value)},
                   {"failed_points", Cell{static_cast<long long>(curve.failed_tau_c.size())}},
                   {"non_cooling_points", Cell{static_cast<long long>(curve.non_cooling_tau_c.size())}}};
    if (!curve.failed_tau_c.empty()) rep.diagnostics.push_back(list_points("tau_c without allocation", curve.failed_tau_c));
    if (!curve.non_cooling_tau_c.empty())
        rep.diagnostics.push_back(list_points("tau_c with Q_c <= 0 or Q_h <= 0", curve.non_cooling_tau_c));
    return rep;
}

Report report_alpha_sweep(const RunConfig& c) {
    Report rep;
    rep.columns = {"alpha", "R_alpha_max", "psi_alpha_R", "chi_alpha_max", "psi_alpha_chi"};
    const auto sweep = alpha_sweep(c.tricycle(), alpha_grid_of(c), curve_of(c));
    for (const auto& p : sweep.points)
        rep.rows.push_back({num(p.alpha), num(p.best_R.value), num(p.best_R.psi), num(p.best_chi.value),
                            num(p.best_chi.psi)});
    rep.summary = {{"alpha_chi", num(sweep.alpha_chi)}, {"chi_max", num(sweep.chi_max)},
                   {"alpha_R", num(sweep.alpha_R)},     {"R_max", num(sweep.R_max)}};
    if (!sweep.failed_alpha.empty()) rep.diagnostics.push_back(list_points("alpha failed", sweep.failed_alpha));
    return rep;
}

std::vector<double> psi_grid_of(const RunConfig& c) {
    if (c.psi_min && c.psi_max) return linear_grid(*c.psi_min, *c.psi_max, c.psi_points);
    return {};
}

Report report_envelope(const RunConfig& c) {
    Report rep;
    rep.columns = kRecordColumns;
    const auto env = envelope_curve(c.tricycle(), psi_grid_of(c), alpha_grid_of(c), curve_of(c));
    for (const auto& r : env.records) rep.rows.push_back(record_row(r));
    rep.summary = {{"psi_R", num(env.psi_R)},
                   {"R_at_psi_R", num(env.at_psi_R.R)},
                   {"alpha_at_psi_R", num(env.at_psi_R.alpha)},
                   {"psi_chi", num(env.psi_chi)},
                   {"chi_at_psi_chi", num(env.at_psi_chi.chi)},
                   {"alpha_at_psi_chi", num(env.at_psi_chi.alpha)}};
    if (!env.unreachable_psi.empty()) rep.diagnostics.push_back(list_points("psi unreachable", env.unreachable_psi));
    return rep;
}

Report report_time_allocation(const RunConfig& c) {
    Report rep;
    rep.columns = {"alpha", "psi", "tau_total", "tau_h_over_tau_p", "tau_c_over_tau_p"};
    const auto cfg = c.tricycle();
    const auto opts = curve_of(c);
    const auto sweep = alpha_sweep(cfg, alpha_grid_of(c), opts);
    double lo = 0.0;
    double hi = 0.0;
    if (c.psi_min && c.psi_max) {
        lo = *c.psi_min;
        hi = *c.psi_max;
    } else {
        const auto env = envelope_curve(cfg, {}, alpha_grid_of(c), opts);
        lo = std::min(env.psi_R, env.psi_chi);
        hi = std::max(env.psi_R, env.psi_chi);
        rep.summary.emplace_back("psi_R", num(env.psi_R));
        rep.summary.emplace_back("psi_chi", num(env.psi_chi));
    }
    if (!(hi > lo)) throw ConvergenceError("optimal psi region is degenerate");
    const auto grid = linear_grid(lo, hi, c.psi_points);
    const auto prof_chi = time_allocation_profile(cfg, grid, sweep.alpha_chi, opts);
    const auto prof_R = time_allocation_profile(cfg, grid, sweep.alpha_R, opts);
    for (const auto* prof : {&prof_chi, &prof_R})
        for (const auto& r : prof->rows)
            rep.rows.push_back({num(prof->alpha), num(r.psi), num(r.tau_total), num(r.tau_h_over_tau_p),
                                num(r.tau_c_over_tau_p)});

    const double gap = profile_gap(prof_chi, prof_R);
    rep.summary.emplace_back("alpha_chi", num(sweep.alpha_chi));
    rep.summary.emplace_back("alpha_R", num(sweep.alpha_R));
    rep.summary.emplace_back("tau_increasing", flag(prof_chi.tau_increasing && prof_R.tau_increasing));
    rep.summary.emplace_back("tau_h_over_tau_p_decreasing",
                             flag(prof_chi.ratio_h_decreasing && prof_R.ratio_h_decreasing));
    rep.summary.emplace_back("tau_c_over_tau_p_decreasing",
                             flag(prof_chi.ratio_c_decreasing && prof_R.ratio_c_decreasing));
    rep.summary.emplace_back("max_relative_tau_gap", num(gap));
    for (const auto* prof : {&prof_chi, &prof_R})
        if (!prof->unreachable_psi.empty())
            rep.diagnostics.push_back(list_points("psi unreachable", prof->unreachable_psi));
    return rep;
}

Report report_reversible_delta(const RunConfig& c) {
    Report rep;
    rep.columns = {"delta_c", "sum_Q0"};
    const auto cfg = c.tricycle();
    for (const auto& p : zeroth_heat_sum_curve(cfg, linear_grid(c.delta_min, c.delta_max, c.delta_points)))
        rep.rows.push_back({num(p.delta_c), num(p.sum_Q0)});
    rep.summary.emplace_back("delta_c_r", num(reversible_amplitude(cfg, {c.delta_min, c.delta_max, c.delta_points})));
    return rep;
}

Report report_oracle(const RunConfig& c) {
    Report rep;
    rep.columns = {"tau", "steps", "Q_oracle", "Q0", "Q1", "Q_perturbative", "error", "error_ratio"};
    const auto cfg = c.tricycle();
    const Reservoir r = c.oracle_reservoir == "h" ? Reservoir::hot
                        : c.oracle_reservoir == "p" ? Reservoir::pump
                                                    : Reservoir::cold;
    const auto branch = make_branch(cfg, r);
    const auto start = gibbs_state(branch.temperature(), branch.frequency(0.0));
    double prev_err = 0.0;
    for (int d = 0; d < c.oracle_doublings; ++d) {
        const double tau = c.oracle_tau * std::ldexp(1.0, d);
        const int steps = recommended_steps(branch, tau);
        const auto samples = propagate(branch, tau, steps, start);
        const double q = heat_via_trajectory(branch, tau, samples);
        const auto th = branch_heat(branch, tau, quad_of(c));
        const double err = std::abs(q - th.Q);
        rep.rows.push_back({num(tau), Cell{static_cast<long long>(steps)}, num(q), num(th.Q0), num(th.Q1),
                            num(th.Q), num(err), d == 0 ? Cell{} : num(err / prev_err)});
        prev_err = err;
    }
    rep.grids["reservoir"] = c.oracle_reservoir;
    return rep;
}

} // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"branch",       "cycle",          "ts-diagram",
                                                   "sweep-times",  "optimal-curve",  "alpha-sweep",
                                                   "envelope",     "time-allocation", "reversible-delta",
                                                   "oracle-check"};
    return names;
}

Report build_report(const std::string& sub, const RunConfig& cfg) {
    validate(cfg);
    Report rep;
    if (sub == "branch") rep = report_branch(cfg);
    else if (sub == "cycle") rep = report_cycle(cfg);
    else if (sub == "ts-diagram") rep = report_ts(cfg);
    else if (sub == "sweep-times") rep = report_sweep_times(cfg);
    else if (sub == "optimal-curve") rep = report_optimal_curve(cfg);
    else if (sub == "alpha-sweep") rep = report_alpha_sweep(cfg);
    else if (sub == "envelope") rep = report_envelope(cfg);
    else if (sub == "time-allocation") rep = report_time_allocation(cfg);
    else if (sub == "reversible-delta") rep = report_reversible_delta(cfg);
    else if (sub == "oracle-check") rep = report_oracle(cfg);
    else throw ConfigError("unknown subcommand '" + sub + "'");
    rep.subcommand = sub;
    return rep;
}

std::string diagnostics_path(const std::string& sub, const RunConfig& cfg) {
    if (!cfg.output.empty()) return cfg.output + ".diagnostics.txt";
    return "tricycle-" + sub + ".diagnostics.txt";
}

int run(const std::string& sub, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto write_diagnostics = [&](const std::vector<std::string>& lines) {
        std::ostringstream os;
        os << "# tricycle " << sub << " diagnostics\n";
        for (const auto& l : lines) os << l << '\n';
        write_atomic(diagnostics_path(sub, cfg), os.str());
    };
    try {
        const Report rep = build_report(sub, cfg);
        const std::string body = emit_report(rep, cfg, cfg.format);
        if (cfg.output.empty()) out << body;
        else write_atomic(cfg.output, body);
        if (!rep.diagnostics.empty()) {
            write_diagnostics(rep.diagnostics);
        } else {
            std::error_code ec; // a stale file from an earlier failed run would mislead
            std::filesystem::remove(diagnostics_path(sub, cfg), ec);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConvergenceError& e) {
        err << "solver did not converge: " << e.what() << '\n';
        write_diagnostics({std::string("failure: ") + e.what()});
        return kExitSolver;
    } catch (const PositivityError& e) {
        err << "solver did not converge: " << e.what() << '\n';
        write_diagnostics({std::string("failure: ") + e.what()});
        return kExitSolver;
    }
}

} // namespace tricycle
