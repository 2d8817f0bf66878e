#include "seadiag/detector.hpp"
#include "seadiag/export.hpp"
#include "seadiag/pipeline.hpp"
#include "seadiag/scenario.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <exception>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitNominal = 0;
constexpr int kExitError = 1;
constexpr int kExitFault = 2;

/// Threshold the published joint is evaluated against.
constexpr double kReferenceTorsionalThreshold = 12.0;

void print_report(const seadiag::Scenario& scenario, const seadiag::DiagnosticReport& report)
{
    using namespace seadiag;
    std::cout << fmt::format("scenario '{}' seed {}: {}\n", scenario.label, scenario.seed,
                             to_string(report.verdict));
    for (Constraint c : kAllConstraints) {
        const ConstraintReport& r = report[c];
        std::cout << fmt::format("  {:<10} eps={:<10.6g} peak={:<10.6g} margin={:<8.4g} {}\n",
                                 to_string(c), scenario.thresholds.of(c), r.peak_filtered,
                                 r.margin,
                                 r.first_crossing
                                     ? fmt::format("TRIGGERED at t={:.3f} s", *r.first_crossing)
                                     : std::string("ok"));
    }
}

int cmd_run(const std::string& path, const std::optional<std::string>& out_dir,
            const std::optional<std::uint64_t>& seed, const std::vector<std::string>& overrides)
{
    seadiag::Scenario scenario = seadiag::load_scenario(path, overrides);
    if (seed) {
        scenario.seed = *seed;
        scenario.noise.seed = *seed;
    }
    const seadiag::RunResult result = seadiag::run(scenario);

    std::optional<std::string> dir = out_dir;
    if (!dir) {
        if (const char* env = std::getenv("SEADIAG_OUT_DIR")) dir = env;
    }
    if (dir) {
        seadiag::export_csv(scenario, result, *dir);
    }
    print_report(scenario, result.report);
    return result.report.verdict == seadiag::Verdict::nominal ? kExitNominal : kExitFault;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& overrides)
{
    const seadiag::Scenario scenario = seadiag::load_scenario(path, overrides);
    std::cout << fmt::format("{}: ok ({} samples, {} fault(s))\n", path, scenario.sample_count(),
                             scenario.faults.size());
    return kExitNominal;
}

int cmd_tune(const std::vector<std::string>& paths, double factor, int seeds)
{
    using namespace seadiag;
    std::vector<Scenario> runs;
    bool reference = true;
    double settling = 0.0;
    for (const std::string& path : paths) {
        const Scenario base = load_scenario(path);
        for (const FaultSpec& f : base.faults) {
            if (f.kind != FaultKind::none) {
                throw ConfigError("fault", fmt::format("{} injects a fault; tune needs nominal runs",
                                                       path));
            }
        }
        reference = reference && uses_reference_parameters(base);
        settling = std::max(settling, base.thresholds.settling);
        for (int k = 0; k < seeds; ++k) {
            Scenario s = base;
            s.seed = base.seed + static_cast<std::uint64_t>(k);
            s.noise.seed = s.seed;
            runs.push_back(std::move(s));
        }
    }

    // Each run owns its RNG and filter state, so they can go in parallel.
    std::vector<std::future<std::vector<ResidualFrame>>> pending;
    pending.reserve(runs.size());
    for (const Scenario& s : runs) {
        pending.push_back(std::async(std::launch::async, [&s] { return run(s).residuals; }));
    }
    std::vector<std::vector<ResidualFrame>> residuals;
    residuals.reserve(pending.size());
    for (auto& p : pending) residuals.push_back(p.get());

    const Thresholds tuned = tune_thresholds(residuals, factor, settling);
    Thresholds applied = tuned;
    if (reference) {
        applied.torsional = kReferenceTorsionalThreshold;
    }

    std::cout << fmt::format("# tuned from {} nominal run(s), safety factor {}\n", runs.size(),
                             factor);
    if (reference) {
        std::cout << fmt::format("# reference joint: torsional pinned to {} (tuned {:.6g})\n",
                                 kReferenceTorsionalThreshold, tuned.torsional);
    }
    std::cout << "[thresholds]\n";
    for (Constraint c : kAllConstraints) {
        std::cout << fmt::format("{} = {:.6g}\n", to_string(c), applied.of(c));
    }
    std::cout << fmt::format("settling = {}\n", applied.settling);
    return kExitNominal;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Series elastic actuator sensor diagnostics simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and report detections");
    run_cmd->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_dir,
                        "Directory for telemetry.csv, residuals.csv, report.json "
                        "(default: $SEADIAG_OUT_DIR, else no files)");
    run_cmd->add_option("--seed", seed, "Override the scenario seed");
    run_cmd->add_option("--override", overrides, "section.key=value, repeatable");

    std::vector<std::string> tune_paths;
    double factor = 3.0;
    int seeds = 1;
    auto* tune_cmd = app.add_subcommand("tune", "Derive thresholds from fault-free scenarios");
    tune_cmd->add_option("--scenarios", tune_paths, "Nominal scenario files")->required()->check(CLI::ExistingFile);
    tune_cmd->add_option("--factor", factor, "Safety factor on the observed peak")->required();
    tune_cmd->add_option("--seeds", seeds, "Consecutive seeds per scenario")->check(CLI::PositiveNumber);

    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario file");
    validate_cmd->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("--override", overrides, "section.key=value, repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitNominal : kExitError;
    }

    try {
        if (*run_cmd) return cmd_run(scenario_path, out_dir, seed, overrides);
        if (*tune_cmd) return cmd_tune(tune_paths, factor, seeds);
        if (*validate_cmd) return cmd_validate(scenario_path, overrides);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
