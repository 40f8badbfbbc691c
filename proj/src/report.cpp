#include "tricycle/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tricycle {

namespace {

std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, double>) return format_number(v);
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else return v;
        },
        c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else return v;
        },
        c);
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0; // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string emit_report(const Report& report, const RunConfig& cfg, OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::ostringstream os;
        for (std::size_t i = 0; i < report.columns.size(); ++i)
            os << (i ? "," : "") << report.columns[i];
        os << '\n';
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << '\n';
        }
        for (const auto& [name, value] : report.summary) os << "# " << name << " = " << csv_cell(value) << '\n';
        return os.str();
    }

    nlohmann::ordered_json doc;
    doc["meta"]["tool"] = "tricycle";
    doc["meta"]["version"] = kToolVersion;
    doc["meta"]["subcommand"] = report.subcommand;
    doc["meta"]["config"] = resolved_settings(cfg);
    doc["meta"]["grids"] = report.grids;
    doc["meta"]["columns"] = report.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i)
            r[report.columns[i]] = json_cell(row[i]);
        doc["rows"].push_back(std::move(r));
    }
    doc["summary"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : report.summary) doc["summary"][name] = json_cell(value);
    return doc.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& text) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at '" + path + "'");
    }
}

} // namespace tricycle
