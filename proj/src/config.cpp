#include "tricycle/config.hpp"

#include "tricycle/errors.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace tricycle {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
    }
    if (pos != value.size() || !std::isfinite(out))
        throw ConfigError("key '" + key + "': expected a finite number, got '" + value + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long out = 0;
    try {
        out = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    }
    if (pos != value.size()) throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    return static_cast<int>(out);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Key {
    const char* name;
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
    std::function<nlohmann::ordered_json(const RunConfig&)> get;
};

#define TRICYCLE_DOUBLE(key, member)                                                              \
    Key {                                                                                         \
        key, [](RunConfig& c, const std::string& k, const std::string& v) { c.member = parse_double(k, v); }, \
            [](const RunConfig& c) { return nlohmann::ordered_json(c.member); }                   \
    }
#define TRICYCLE_INT(key, member)                                                                 \
    Key {                                                                                         \
        key, [](RunConfig& c, const std::string& k, const std::string& v) { c.member = parse_int(k, v); }, \
            [](const RunConfig& c) { return nlohmann::ordered_json(c.member); }                   \
    }
#define TRICYCLE_OPT_DOUBLE(key, member)                                                          \
    Key {                                                                                         \
        key,                                                                                      \
            [](RunConfig& c, const std::string& k, const std::string& v) {                        \
                if (v == "auto") c.member.reset();                                                \
                else c.member = parse_double(k, v);                                               \
            },                                                                                    \
            [](const RunConfig& c) {                                                              \
                return c.member ? nlohmann::ordered_json(*c.member) : nlohmann::ordered_json("auto"); \
            }                                                                                     \
    }

const std::vector<Key>& key_table() {
    static const std::vector<Key> table = {
        TRICYCLE_DOUBLE("T_c", model.t_cold),
        TRICYCLE_DOUBLE("T_h", model.t_hot),
        TRICYCLE_DOUBLE("T_p", model.t_pump),
        TRICYCLE_DOUBLE("zeta_c", model.zeta_c),
        TRICYCLE_DOUBLE("zeta_h", model.zeta_h),
        TRICYCLE_DOUBLE("delta_c", model.delta_c),
        TRICYCLE_DOUBLE("gamma0", model.gamma0),
        TRICYCLE_DOUBLE("alpha", model.alpha),
        TRICYCLE_DOUBLE("tau_c", tau_c),
        TRICYCLE_OPT_DOUBLE("tau_h", tau_h),
        TRICYCLE_DOUBLE("tau_p", tau_p),
        TRICYCLE_DOUBLE("curve_tau_c_min", curve_tau_c_min),
        TRICYCLE_DOUBLE("curve_tau_c_max", curve_tau_c_max),
        TRICYCLE_INT("curve_tau_c_points", curve_tau_c_points),
        TRICYCLE_DOUBLE("scan_tau_p_min", scan_tau_p_min),
        TRICYCLE_DOUBLE("scan_tau_p_max", scan_tau_p_max),
        TRICYCLE_INT("scan_tau_p_points", scan_tau_p_points),
        TRICYCLE_DOUBLE("sweep_tau_c_min", sweep_tau_c_min),
        TRICYCLE_DOUBLE("sweep_tau_c_max", sweep_tau_c_max),
        TRICYCLE_INT("sweep_tau_c_points", sweep_tau_c_points),
        TRICYCLE_DOUBLE("sweep_tau_p_min", sweep_tau_p_min),
        TRICYCLE_DOUBLE("sweep_tau_p_max", sweep_tau_p_max),
        TRICYCLE_INT("sweep_tau_p_points", sweep_tau_p_points),
        TRICYCLE_DOUBLE("alpha_min", alpha_min),
        TRICYCLE_DOUBLE("alpha_max", alpha_max),
        TRICYCLE_INT("alpha_points", alpha_points),
        TRICYCLE_OPT_DOUBLE("psi_min", psi_min),
        TRICYCLE_OPT_DOUBLE("psi_max", psi_max),
        TRICYCLE_INT("psi_points", psi_points),
        TRICYCLE_INT("samples_per_branch", samples_per_branch),
        TRICYCLE_DOUBLE("delta_min", delta_min),
        TRICYCLE_DOUBLE("delta_max", delta_max),
        TRICYCLE_INT("delta_points", delta_points),
        TRICYCLE_DOUBLE("oracle_tau", oracle_tau),
        TRICYCLE_INT("oracle_doublings", oracle_doublings),
        Key{"oracle_reservoir",
            [](RunConfig& c, const std::string&, const std::string& v) {
                if (v != "c" && v != "h" && v != "p")
                    throw ConfigError("key 'oracle_reservoir': expected c, h or p, got '" + v + "'");
                c.oracle_reservoir = v;
            },
            [](const RunConfig& c) { return nlohmann::ordered_json(c.oracle_reservoir); }},
        TRICYCLE_DOUBLE("quad_rel_tol", quad_rel_tol),
        Key{"output", [](RunConfig& c, const std::string&, const std::string& v) { c.output = v; },
            [](const RunConfig& c) { return nlohmann::ordered_json(c.output); }},
        Key{"format",
            [](RunConfig& c, const std::string&, const std::string& v) {
                if (v == "csv") c.format = OutputFormat::csv;
                else if (v == "json") c.format = OutputFormat::json;
                else throw ConfigError("key 'format': expected csv or json, got '" + v + "'");
            },
            [](const RunConfig& c) {
                return nlohmann::ordered_json(c.format == OutputFormat::csv ? "csv" : "json");
            }},
    };
    return table;
}

#undef TRICYCLE_DOUBLE
#undef TRICYCLE_INT
#undef TRICYCLE_OPT_DOUBLE

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

} // namespace

TricycleConfig RunConfig::tricycle() const { return TricycleConfig(model); }

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& k : key_table()) {
        if (key == k.name) {
            k.set(cfg, key, value);
            return;
        }
    }
    throw ConfigError("unknown configuration key '" + key + "'");
}

void validate(const RunConfig& c) {
    (void)c.tricycle();
    require(c.tau_c > 0.0 && c.tau_p > 0.0, "tau_c and tau_p must be positive");
    require(!c.tau_h || *c.tau_h > 0.0, "tau_h must be positive");
    require(c.curve_tau_c_min > 0.0 && c.curve_tau_c_max > c.curve_tau_c_min, "curve_tau_c range is invalid");
    require(c.curve_tau_c_points >= 100, "curve_tau_c_points must be at least 100");
    require(c.scan_tau_p_min > 0.0 && c.scan_tau_p_max > c.scan_tau_p_min, "scan_tau_p range is invalid");
    require(c.scan_tau_p_points >= 2, "scan_tau_p_points must be at least 2");
    require(c.sweep_tau_c_min > 0.0 && c.sweep_tau_c_max > c.sweep_tau_c_min, "sweep_tau_c range is invalid");
    require(c.sweep_tau_p_min > 0.0 && c.sweep_tau_p_max > c.sweep_tau_p_min, "sweep_tau_p range is invalid");
    require(c.sweep_tau_c_points >= 2 && c.sweep_tau_p_points >= 2, "sweep grids need at least 2 points");
    require(c.alpha_max > c.alpha_min, "alpha_max must exceed alpha_min");
    require(c.alpha_points >= 3, "alpha_points must be at least 3");
    require(!c.psi_min || *c.psi_min > 0.0, "psi_min must be positive");
    require(!c.psi_min || !c.psi_max || *c.psi_max > *c.psi_min, "psi_max must exceed psi_min");
    require(c.psi_points >= 2, "psi_points must be at least 2");
    require(c.samples_per_branch >= 2, "samples_per_branch must be at least 2");
    require(c.delta_min > 0.0 && c.delta_max > c.delta_min, "delta range is invalid");
    require(c.delta_points >= 2, "delta_points must be at least 2");
    require(c.oracle_tau > 0.0, "oracle_tau must be positive");
    require(c.oracle_doublings >= 1, "oracle_doublings must be at least 1");
    require(c.quad_rel_tol > 0.0 && c.quad_rel_tol < 1e-3, "quad_rel_tol must lie in (0, 1e-3)");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        apply_setting(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

nlohmann::ordered_json resolved_settings(const RunConfig& cfg) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& k : key_table()) out[k.name] = k.get(cfg);
    return out;
}

std::vector<std::string> known_keys() {
    std::vector<std::string> out;
    for (const auto& k : key_table()) out.emplace_back(k.name);
    return out;
}

} // namespace tricycle
