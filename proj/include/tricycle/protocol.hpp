// protocol.hpp: cosine frequency schedules of the three heat-exchange branches

#pragma once

#include <array>
#include <string_view>

namespace tricycle {

enum class Reservoir { cold, hot, pump };

// decreasing: omega(s) = delta (cos(pi s) + zeta)
// increasing: omega(s) = delta (cos(pi (1 - s)) + zeta)
enum class Phase { decreasing, increasing };

std::string_view to_string(Reservoir r);
std::string_view to_string(Phase p);

struct LinkedParams {
    double zeta_p;
    double delta_h;
    double delta_p;
};

// Amplitudes and displacements that keep beta*omega continuous across the
// three population-preserving quenches. Throws ConfigError on invalid input.
LinkedParams derive_linked_params(double t_cold, double t_hot, double t_pump,
                                  double zeta_c, double zeta_h, double delta_c);

// Full parameter set of the driven two-level tricycle (hbar = k_B = 1).
class TricycleConfig {
public:
    struct Params {
        double t_cold{0.2};
        double t_hot{1.0};
        double t_pump{0.5};
        double zeta_c{2.0};
        double zeta_h{2.0};
        double delta_c{0.5333};
        double gamma0{1.0};
        double alpha{0.0};
    };

    TricycleConfig() : TricycleConfig(Params{}) {}
    explicit TricycleConfig(const Params& p);

    const Params& params() const { return params_; }
    double t_cold() const { return params_.t_cold; }
    double t_hot() const { return params_.t_hot; }
    double t_pump() const { return params_.t_pump; }
    double zeta_c() const { return params_.zeta_c; }
    double zeta_h() const { return params_.zeta_h; }
    double delta_c() const { return params_.delta_c; }
    double gamma0() const { return params_.gamma0; }
    double alpha() const { return params_.alpha; }

    double zeta_p() const { return linked_.zeta_p; }
    double delta_h() const { return linked_.delta_h; }
    double delta_p() const { return linked_.delta_p; }
    const LinkedParams& linked() const { return linked_; }

    double temperature(Reservoir r) const;

    TricycleConfig with_delta_c(double delta_c) const;
    TricycleConfig with_alpha(double alpha) const;

private:
    Params params_;
    LinkedParams linked_;
};

// One heat-exchange stroke: omega(s) = center + amplitude * cos(pi s) for the
// decreasing phase and center + amplitude * cos(pi (1 - s)) for the increasing
// one, where center = amplitude * zeta. The bath couples with
// gamma(omega) = gamma0 * omega^alpha. Durations are passed separately.
class BranchProtocol {
public:
    BranchProtocol(Reservoir reservoir, double temperature, double delta, double zeta,
                   Phase phase, double gamma0, double alpha);

    // Constant frequency omega0 (zero amplitude); used for relaxation checks.
    static BranchProtocol frozen(Reservoir reservoir, double temperature, double omega0,
                                 double gamma0, double alpha);

    Reservoir reservoir() const { return reservoir_; }
    double temperature() const { return temperature_; }
    double delta() const { return delta_; }
    double center() const { return center_; }
    double zeta() const;
    Phase phase() const { return phase_; }
    double gamma0() const { return gamma0_; }
    double alpha() const { return alpha_; }

    double frequency(double s) const;
    double frequency_derivative(double s) const;

    // Unchecked variants for hot loops (quadrature, RK4 stages).
    double frequency_unchecked(double s) const;
    double frequency_derivative_unchecked(double s) const;

private:
    BranchProtocol() = default;

    Reservoir reservoir_{Reservoir::cold};
    double temperature_{1.0};
    double delta_{0.0};
    double center_{1.0};
    Phase phase_{Phase::decreasing};
    double gamma0_{1.0};
    double alpha_{0.0};
};

BranchProtocol make_branch(const TricycleConfig& config, Reservoir r);
std::array<BranchProtocol, 3> make_branches(const TricycleConfig& config);

struct QuenchPair {
    Reservoir from;
    Reservoir to;
    double omega_before; // end of the outgoing branch
    double omega_after;  // start of the incoming branch
    double ratio() const { return omega_after / omega_before; }
    double expected_ratio; // T_to / T_from
};

// The three diabatic jumps c->h, h->p, p->c.
std::array<QuenchPair, 3> quench_targets(const TricycleConfig& config);

} // namespace tricycle
