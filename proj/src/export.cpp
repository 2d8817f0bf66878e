#include "seadiag/export.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

namespace seadiag {

namespace {

// 12 significant digits, plain decimal or exponent form.
constexpr auto kNumber = "{:.12g}";

} // namespace

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryFrame> frames)
{
    out << kTelemetryHeader << '\n';
    std::string line;
    for (const TelemetryFrame& f : frames) {
        line.clear();
        fmt::format_to(std::back_inserter(line), kNumber, f.t);
        for (Channel c : kAllChannels) {
            line += ',';
            fmt::format_to(std::back_inserter(line), kNumber, f[c]);
        }
        out << line << '\n';
    }
}

void write_residuals_csv(std::ostream& out, std::span<const ResidualFrame> frames)
{
    out << kResidualHeader << '\n';
    std::string line;
    for (const ResidualFrame& r : frames) {
        line.clear();
        fmt::format_to(std::back_inserter(line), kNumber, r.t);
        for (Constraint c : kAllConstraints) {
            line += ',';
            fmt::format_to(std::back_inserter(line), kNumber, r.raw[c]);
            line += ',';
            fmt::format_to(std::back_inserter(line), kNumber, r.filtered[c]);
        }
        out << line << '\n';
    }
}

std::string report_json(const Scenario& scenario, const DiagnosticReport& report)
{
    nlohmann::ordered_json doc;
    doc["label"] = scenario.label;
    doc["seed"] = scenario.seed;
    doc["verdict"] = std::string(to_string(report.verdict));
    doc["settling"] = scenario.thresholds.settling;
    nlohmann::ordered_json constraints;
    for (Constraint c : kAllConstraints) {
        const ConstraintReport& r = report[c];
        nlohmann::ordered_json entry;
        entry["threshold"] = scenario.thresholds.of(c);
        entry["triggered"] = r.triggered;
        entry["first_crossing"] =
            r.first_crossing ? nlohmann::ordered_json(*r.first_crossing) : nlohmann::ordered_json();
        entry["peak_filtered"] = r.peak_filtered;
        entry["margin"] = r.margin;
        constraints[std::string(to_string(c))] = entry;
    }
    doc["constraints"] = constraints;
    return doc.dump(2) + "\n";
}

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    writer(out);
    out.flush();
    if (!out) {
        throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
    }
}

} // namespace

void export_csv(const Scenario& scenario, const RunResult& result,
                const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error(
            fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    }
    write_file(dir / "telemetry.csv",
               [&](std::ostream& out) { write_telemetry_csv(out, result.telemetry); });
    write_file(dir / "residuals.csv",
               [&](std::ostream& out) { write_residuals_csv(out, result.residuals); });
    write_file(dir / "report.json",
               [&](std::ostream& out) { out << report_json(scenario, result.report); });
}

} // namespace seadiag
