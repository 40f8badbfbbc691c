#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TRICYCLE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("tricycle_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string summary_value(const std::string& csv, const std::string& name) {
    const std::string tag = "# " + name + " = ";
    const auto pos = csv.find(tag);
    if (pos == std::string::npos) return {};
    const auto end = csv.find('\n', pos);
    return csv.substr(pos + tag.size(), end - pos - tag.size());
}

} // namespace

TEST_CASE("every subcommand runs on defaults", "[cli]") {
    for (const char* sub : {"branch", "cycle", "ts-diagram", "sweep-times", "optimal-curve", "alpha-sweep",
                            "envelope", "time-allocation", "reversible-delta", "oracle-check"}) {
        const auto out = scratch() / (std::string(sub) + ".csv");
        INFO(sub);
        REQUIRE(run_cli(std::string(sub) + " --out " + out.string()) == 0);
        const auto text = slurp(out);
        CHECK_FALSE(text.empty());
        CHECK(text.front() != '#');
    }
}

TEST_CASE("reversible-delta reports the balance amplitude", "[cli]") {
    const auto out = scratch() / "rd.csv";
    REQUIRE(run_cli("reversible-delta --out " + out.string()) == 0);
    const auto text = slurp(out);
    CHECK(text.rfind("delta_c,sum_Q0\n", 0) == 0);
    const double dr = std::stod(summary_value(text, "delta_c_r"));
    CHECK(dr == Catch::Approx(0.3492).margin(1e-3));
}

TEST_CASE("config file and overrides", "[cli]") {
    const auto cfg = scratch() / "rev.cfg";
    std::ofstream(cfg) << "# reversible model\ndelta_c = 0.3492\ntau_h = 10\n";
    const auto a = scratch() / "a.csv";
    const auto b = scratch() / "b.csv";
    REQUIRE(run_cli("branch --config " + cfg.string() + " --out " + a.string()) == 0);
    REQUIRE(run_cli("branch --set delta_c=0.3492 --set tau_h=10 --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("3.4920000000000001e-01") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2", "[cli]") {
    CHECK(run_cli("cycle --set zeta_c=0.5") == 2);
    CHECK(run_cli("cycle --set no_such_key=1") == 2);
    CHECK(run_cli("cycle --config /nonexistent/tricycle.cfg") == 2);
    CHECK(run_cli("cycle --format xml") == 2);
    CHECK(run_cli("cycle --set delta_c") == 2);
    CHECK(run_cli("") == 2);
}

TEST_CASE("solver failure exits with 3 and writes diagnostics", "[cli]") {
    const auto out = scratch() / "fail.csv";
    CHECK(run_cli("reversible-delta --set delta_min=0.5 --out " + out.string()) == 3);
    const auto diag = fs::path(out.string() + ".diagnostics.txt");
    REQUIRE(fs::exists(diag));
    CHECK(slurp(diag).find("no sign change") != std::string::npos);
    // A later clean run removes the stale file.
    CHECK(run_cli("reversible-delta --out " + out.string()) == 0);
    CHECK_FALSE(fs::exists(diag));
}

TEST_CASE("non-cooling grid points are listed in diagnostics", "[cli]") {
    const auto out = scratch() / "curve.csv";
    REQUIRE(run_cli("optimal-curve --out " + out.string()) == 0);
    const auto diag = fs::path(out.string() + ".diagnostics.txt");
    REQUIRE(fs::exists(diag));
    CHECK(slurp(diag).find("Q_c <= 0") != std::string::npos);
    CHECK(summary_value(slurp(out), "non_cooling_points") == "10");
}

TEST_CASE("json output and byte stability", "[cli]") {
    const auto j1 = scratch() / "c1.json";
    const auto j2 = scratch() / "c2.json";
    REQUIRE(run_cli("optimal-curve --format json --out " + j1.string()) == 0);
    REQUIRE(run_cli("optimal-curve --format json --out " + j2.string()) == 0);
    const auto js = nlohmann::json::parse(slurp(j1));
    CHECK(js["meta"]["subcommand"] == "optimal-curve");
    CHECK(js["rows"].size() >= 100);
    CHECK(js["rows"][0].contains("psi"));
    CHECK(js["rows"][0].contains("tau_h"));
    // Outputs differ only in the echoed output path.
    auto a = nlohmann::json::parse(slurp(j1));
    auto b = nlohmann::json::parse(slurp(j2));
    a["meta"]["config"].erase("output");
    b["meta"]["config"].erase("output");
    CHECK(a == b);
}

TEST_CASE("thread count does not change results", "[cli]") {
    const auto one = scratch() / "a1.csv";
    const auto many = scratch() / "a4.csv";
    const std::string base = std::string(TRICYCLE_CLI_PATH) + " alpha-sweep --set alpha_points=21 --out ";
    REQUIRE(std::system(("TRICYCLE_THREADS=1 " + base + one.string()).c_str()) == 0);
    REQUIRE(std::system(("TRICYCLE_THREADS=4 " + base + many.string()).c_str()) == 0);
    CHECK(slurp(one) == slurp(many));
}
