#include "tricycle/protocol.hpp"

#include "tricycle/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace tricycle {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what, double value) {
    if (!ok) {
        std::ostringstream os;
        os << what << " (got " << value << ")";
        throw ConfigError(os.str());
    }
}

void check_temperatures(double t_cold, double t_hot, double t_pump) {
    require(std::isfinite(t_cold) && t_cold > 0.0, "T_c must be positive", t_cold);
    require(std::isfinite(t_pump) && t_pump > t_cold, "temperatures must satisfy T_c < T_p", t_pump);
    require(std::isfinite(t_hot) && t_hot > t_pump, "temperatures must satisfy T_p < T_h", t_hot);
}

} // namespace

std::string_view to_string(Reservoir r) {
    switch (r) {
    case Reservoir::cold: return "c";
    case Reservoir::hot: return "h";
    case Reservoir::pump: return "p";
    }
    return "?";
}

std::string_view to_string(Phase p) {
    return p == Phase::decreasing ? "decreasing" : "increasing";
}

LinkedParams derive_linked_params(double t_cold, double t_hot, double t_pump,
                                  double zeta_c, double zeta_h, double delta_c) {
    check_temperatures(t_cold, t_hot, t_pump);
    require(std::isfinite(zeta_c) && zeta_c > 1.0, "zeta_c must be > 1", zeta_c);
    require(std::isfinite(zeta_h) && zeta_h > 1.0, "zeta_h must be > 1", zeta_h);
    require(std::isfinite(delta_c) && delta_c > 0.0, "delta_c must be positive", delta_c);

    LinkedParams out{};
    out.zeta_p = (1.0 + zeta_c * zeta_h) / (zeta_c + zeta_h);
    out.delta_h = t_hot * (zeta_c - 1.0) / (t_cold * (1.0 + zeta_h)) * delta_c;
    out.delta_p = t_pump * (zeta_c + zeta_h) / (t_cold * (1.0 + zeta_h)) * delta_c;
    return out;
}

TricycleConfig::TricycleConfig(const Params& p) : params_(p) {
    require(std::isfinite(p.gamma0) && p.gamma0 > 0.0, "gamma0 must be positive", p.gamma0);
    require(std::isfinite(p.alpha), "alpha must be finite", p.alpha);
    linked_ = derive_linked_params(p.t_cold, p.t_hot, p.t_pump, p.zeta_c, p.zeta_h, p.delta_c);
}

double TricycleConfig::temperature(Reservoir r) const {
    switch (r) {
    case Reservoir::cold: return params_.t_cold;
    case Reservoir::hot: return params_.t_hot;
    case Reservoir::pump: return params_.t_pump;
    }
    return params_.t_cold;
}

TricycleConfig TricycleConfig::with_delta_c(double delta_c) const {
    Params p = params_;
    p.delta_c = delta_c;
    return TricycleConfig(p);
}

TricycleConfig TricycleConfig::with_alpha(double alpha) const {
    Params p = params_;
    p.alpha = alpha;
    return TricycleConfig(p);
}

BranchProtocol::BranchProtocol(Reservoir reservoir, double temperature, double delta, double zeta,
                               Phase phase, double gamma0, double alpha)
    : reservoir_(reservoir), temperature_(temperature), delta_(delta), center_(delta * zeta),
      phase_(phase), gamma0_(gamma0), alpha_(alpha) {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw DomainError("branch temperature must be positive");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw DomainError("branch amplitude must be positive (use frozen() for constant frequency)");
    if (!(zeta > 1.0) || !std::isfinite(zeta))
        throw DomainError("branch displacement must exceed 1 so the frequency stays positive");
    if (!(gamma0 > 0.0)) throw DomainError("gamma0 must be positive");
}

BranchProtocol BranchProtocol::frozen(Reservoir reservoir, double temperature, double omega0,
                                      double gamma0, double alpha) {
    if (!(temperature > 0.0)) throw DomainError("branch temperature must be positive");
    if (!(omega0 > 0.0)) throw DomainError("frozen frequency must be positive");
    if (!(gamma0 > 0.0)) throw DomainError("gamma0 must be positive");
    BranchProtocol b;
    b.reservoir_ = reservoir;
    b.temperature_ = temperature;
    b.delta_ = 0.0;
    b.center_ = omega0;
    b.gamma0_ = gamma0;
    b.alpha_ = alpha;
    return b;
}

double BranchProtocol::zeta() const {
    return delta_ == 0.0 ? std::numeric_limits<double>::infinity() : center_ / delta_;
}

double BranchProtocol::frequency_unchecked(double s) const {
    const double arg = phase_ == Phase::decreasing ? kPi * s : kPi * (1.0 - s);
    return center_ + delta_ * std::cos(arg);
}

double BranchProtocol::frequency_derivative_unchecked(double s) const {
    // d/ds cos(pi s) = -pi sin(pi s);  d/ds cos(pi (1-s)) = pi sin(pi (1-s))
    if (phase_ == Phase::decreasing) return -kPi * delta_ * std::sin(kPi * s);
    return kPi * delta_ * std::sin(kPi * (1.0 - s));
}

double BranchProtocol::frequency(double s) const {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("rescaled time s must lie in [0, 1]");
    return frequency_unchecked(s);
}

double BranchProtocol::frequency_derivative(double s) const {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("rescaled time s must lie in [0, 1]");
    // sin(pi) is 1.2e-16, not 0; the schedule is stationary at both ends.
    if (s == 0.0 || s == 1.0) return 0.0;
    return frequency_derivative_unchecked(s);
}

BranchProtocol make_branch(const TricycleConfig& config, Reservoir r) {
    switch (r) {
    case Reservoir::cold:
        return {r, config.t_cold(), config.delta_c(), config.zeta_c(), Phase::decreasing,
                config.gamma0(), config.alpha()};
    case Reservoir::hot:
        return {r, config.t_hot(), config.delta_h(), config.zeta_h(), Phase::decreasing,
                config.gamma0(), config.alpha()};
    case Reservoir::pump:
        break;
    }
    return {Reservoir::pump, config.t_pump(), config.delta_p(), config.zeta_p(), Phase::increasing,
            config.gamma0(), config.alpha()};
}

std::array<BranchProtocol, 3> make_branches(const TricycleConfig& config) {
    return {make_branch(config, Reservoir::cold), make_branch(config, Reservoir::hot),
            make_branch(config, Reservoir::pump)};
}

std::array<QuenchPair, 3> quench_targets(const TricycleConfig& config) {
    const auto b = make_branches(config);
    std::array<QuenchPair, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& from = b[i];
        const auto& to = b[(i + 1) % 3];
        out[i] = QuenchPair{from.reservoir(), to.reservoir(), from.frequency(1.0),
                            to.frequency(0.0), to.temperature() / from.temperature()};
    }
    return out;
}

} // namespace tricycle
