// config.hpp: flat key=value run configuration

#pragma once

#include "tricycle/protocol.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tricycle {

enum class OutputFormat { csv, json };

struct RunConfig {
    TricycleConfig::Params model{};

    // Branch durations for `branch`, `cycle` and `ts-diagram`. Without tau_h
    // the energy balance fixes it from tau_c and tau_p.
    double tau_c{9.0};
    double tau_p{11.0};
    std::optional<double> tau_h{};

    // tau_c grid of the optimal curve and its refinements
    double curve_tau_c_min{1.0};
    double curve_tau_c_max{1e3};
    int curve_tau_c_points{200};

    // tau_p bracketing scan of the allocation solver
    double scan_tau_p_min{1e-2};
    double scan_tau_p_max{1e5};
    int scan_tau_p_points{200};

    // free (tau_c, tau_p) sweep
    double sweep_tau_c_min{1.0};
    double sweep_tau_c_max{1e3};
    int sweep_tau_c_points{81};
    double sweep_tau_p_min{1.0};
    double sweep_tau_p_max{1e3};
    int sweep_tau_p_points{81};

    double alpha_min{-0.5};
    double alpha_max{1.5};
    int alpha_points{101};

    // psi grid of `envelope` / `time-allocation`; unset bounds are taken from the data
    std::optional<double> psi_min{};
    std::optional<double> psi_max{};
    int psi_points{200};

    int samples_per_branch{101};

    double delta_min{0.01};
    double delta_max{2.0};
    int delta_points{400};

    // `oracle-check`: durations oracle_tau * 2^k for k < oracle_doublings
    double oracle_tau{100.0};
    int oracle_doublings{3};
    std::string oracle_reservoir{"c"};

    double quad_rel_tol{1e-9};

    std::string output{};
    OutputFormat format{OutputFormat::csv};

    // Builds the validated model configuration (throws ConfigError).
    TricycleConfig tricycle() const;
};

// Applies one key=value assignment. Throws ConfigError for unknown keys or
// unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Parses flat key=value text ('#' starts a comment) over the defaults and
// validates the result. Throws ConfigError.
RunConfig parse_config(const std::string& text);

// Re-validates every field (model invariants, grid bounds). Throws ConfigError.
void validate(const RunConfig& cfg);

// Every key with its resolved value, in documentation order.
nlohmann::ordered_json resolved_settings(const RunConfig& cfg);

std::vector<std::string> known_keys();

} // namespace tricycle
