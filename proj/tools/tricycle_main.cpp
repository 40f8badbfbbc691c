// tricycle: figure data for the finite-time quantum tricycle
//
//   tricycle <subcommand> [--config PATH] [--out PATH] [--format csv|json] [--set key=value ...]

#include "tricycle/cli.hpp"
#include "tricycle/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"branch", "per-branch dS_eq, Sigma, Q0, Q1 and Q"},
    {"cycle", "heats, COP, cooling rate and chi of one cycle"},
    {"ts-diagram", "effective temperature and entropy along the cycle"},
    {"sweep-times", "cooling rate over a (tau_c, tau_p) grid"},
    {"optimal-curve", "optimal R and chi versus COP at fixed alpha"},
    {"alpha-sweep", "R_max and chi_max versus alpha"},
    {"envelope", "R and chi versus COP with alpha optimized"},
    {"time-allocation", "optimal durations over the optimal COP region"},
    {"reversible-delta", "zeroth-order heat balance versus delta_c"},
    {"oracle-check", "master-equation heat versus the slow-driving heat"},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-time quantum tricycle: slow-driving heats and optimal time allocation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::vector<std::string> overrides;

    for (const auto& name : tricycle::subcommands()) {
        auto* sub = app.add_subcommand(name, kDescriptions.at(name));
        sub->add_option("--config", config_path, "key=value configuration file");
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--set", overrides, "override one key, e.g. --set delta_c=0.4");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tricycle::kExitConfig;
    }
    const std::string subcommand = app.get_subcommands().front()->get_name();

    tricycle::RunConfig cfg;
    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw tricycle::ConfigError("cannot read config file '" + config_path + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        cfg = tricycle::parse_config(text);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw tricycle::ConfigError("--set expects key=value, got '" + kv + "'");
            tricycle::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!out_path.empty()) cfg.output = out_path;
        if (!format.empty()) tricycle::apply_setting(cfg, "format", format);
        tricycle::validate(cfg);
    } catch (const tricycle::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return tricycle::kExitConfig;
    }

    return tricycle::run(subcommand, cfg, std::cout, std::cerr);
}
