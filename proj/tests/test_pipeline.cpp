#include "seadiag/export.hpp"
#include "seadiag/pipeline.hpp"

#include "support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace seadiag;
using seadiag::testing::bundled;
using seadiag::testing::at_sensor_rate;
using seadiag::testing::matched_model;
using seadiag::testing::relative_residual_peaks;
using seadiag::testing::with_seed;

namespace {

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("seadiag_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST(Run, NominalScenarioIsNominal)
{
    const RunResult r = run(bundled("nominal"));
    EXPECT_EQ(r.report.verdict, Verdict::nominal);
    EXPECT_LT(r.report[Constraint::torsional].peak_filtered, 12.0);
}

TEST(Run, BiasScenarioDetectedAfterOnset)
{
    const RunResult r = run(bundled("bias"));
    EXPECT_EQ(r.report.verdict, Verdict::fault_detected);
    const ConstraintReport& tors = r.report[Constraint::torsional];
    ASSERT_TRUE(tors.triggered);
    EXPECT_GT(*tors.first_crossing, 5.0);
    EXPECT_LT(*tors.first_crossing, 6.0);
}

TEST(Run, StuckScenarioDetectedAfterOnset)
{
    const RunResult r = run(bundled("stuck"));
    const ConstraintReport& tors = r.report[Constraint::torsional];
    ASSERT_TRUE(tors.triggered);
    EXPECT_GT(*tors.first_crossing, 3.1);
}

TEST(Run, SampleTimingAndCount)
{
    Scenario s = bundled("nominal");
    s.duration = 1.2345;
    const RunResult r = run(s);
    ASSERT_EQ(r.telemetry.size(), 1235u);
    for (std::size_t n = 0; n < r.telemetry.size(); ++n) {
        EXPECT_DOUBLE_EQ(r.telemetry[n].t, n / 1000.0);
        EXPECT_EQ(r.residuals[n].t, r.telemetry[n].t);
    }
}

TEST(Run, RecordsTruthOnRequest)
{
    Scenario s = bundled("nominal");
    s.duration = 0.5;
    EXPECT_TRUE(run(s).truth.empty());
    const RunResult r = run(s, RunOptions{.record_truth = true});
    ASSERT_EQ(r.truth.size(), r.telemetry.size());
    EXPECT_NEAR(r.truth.back().t, 0.5, 1e-12);
}

TEST(Run, PreOnsetTelemetryMatchesNominal)
{
    const RunResult nominal = run(bundled("nominal"));
    const RunResult faulty = run(bundled("stuck"));
    ASSERT_EQ(nominal.telemetry.size(), faulty.telemetry.size());
    for (std::size_t n = 0; n < nominal.telemetry.size(); ++n) {
        if (nominal.telemetry[n].t >= 3.1) break;
        ASSERT_EQ(nominal.telemetry[n], faulty.telemetry[n]) << n;
    }
}

// The algebraic constraints null exactly. The dynamics constraint is only as
// exact as its bilinear realization, so it must shrink with the sample period
// squared.
TEST(Run, MatchedModelResidualsVanish)
{
    const ConstraintValues at_1k = relative_residual_peaks(run(matched_model()), 0.2);
    const ConstraintValues at_2k =
        relative_residual_peaks(run(at_sensor_rate(matched_model(), 2000.0)), 0.2);
    EXPECT_LT(at_1k[Constraint::torsional], 1e-6);
    EXPECT_LT(at_1k[Constraint::electrical], 1e-6);
    EXPECT_LT(at_1k[Constraint::dynamics], 1e-4);
    EXPECT_NEAR(std::log2(at_1k[Constraint::dynamics] / at_2k[Constraint::dynamics]), 2.0, 0.2);
}

TEST(Run, TorqueFaultNeverTripsElectrical)
{
    for (const char* name : {"bias", "stuck"}) {
        const RunResult r = run(bundled(name));
        EXPECT_TRUE(r.report[Constraint::torsional].triggered);
        EXPECT_TRUE(r.report[Constraint::dynamics].triggered);
        EXPECT_FALSE(r.report[Constraint::electrical].triggered);
    }
}

TEST(Run, VelocityFaultTripsOnlyElectrical)
{
    Scenario s = bundled("nominal");
    s.faults = {FaultSpec{Channel::omega_m, FaultKind::bias, 4.0, 2000.0}};
    const RunResult r = run(s);
    ASSERT_TRUE(r.report[Constraint::electrical].triggered);
    EXPECT_GT(*r.report[Constraint::electrical].first_crossing, 4.0);
    EXPECT_FALSE(r.report[Constraint::torsional].triggered);
    EXPECT_FALSE(r.report[Constraint::dynamics].triggered);
}

TEST(Run, IntegrationFailureSurfaces)
{
    Scenario s = bundled("nominal");
    s.dt = 0.01;
    s.sensor_rate = 100.0;
    s.cutoff_hz = 5.0;
    s.noise.bandwidth = 20.0;
    EXPECT_THROW(run(s), IntegrationError);
}

TEST(Run, InvalidScenarioRejected)
{
    Scenario s = bundled("nominal");
    s.duration = -1.0;
    EXPECT_THROW(run(s), ConfigError);
}

TEST(Export, HeadersAndRowCount)
{
    Scenario s = bundled("bias");
    s.duration = 6.0;
    const RunResult r = run(s);
    const auto dir = scratch_dir("export");
    export_csv(s, r, dir);

    std::ifstream telemetry(dir / "telemetry.csv");
    std::string line;
    std::getline(telemetry, line);
    EXPECT_EQ(line, "t,theta_m,omega_m,i_m,v_m,theta_l,tau_sea");
    std::size_t rows = 0;
    while (std::getline(telemetry, line)) ++rows;
    EXPECT_EQ(rows, static_cast<std::size_t>(std::floor(s.duration * s.sensor_rate)) + 1);

    std::ifstream residuals(dir / "residuals.csv");
    std::getline(residuals, line);
    EXPECT_EQ(line,
              "t,torsional_raw,torsional_filt,dynamics_raw,dynamics_filt,electrical_raw,electrical_filt");

    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    EXPECT_EQ(report["label"], "bias");
    EXPECT_EQ(report["verdict"], "fault-detected");
    EXPECT_EQ(report["constraints"]["torsional"]["triggered"], true);
    EXPECT_DOUBLE_EQ(report["constraints"]["torsional"]["threshold"].get<double>(), 12.0);
    EXPECT_DOUBLE_EQ(report["constraints"]["torsional"]["first_crossing"].get<double>(),
                     *r.report[Constraint::torsional].first_crossing);
    EXPECT_TRUE(report["constraints"]["electrical"]["first_crossing"].is_null());
    std::filesystem::remove_all(dir);
}

TEST(Export, NumbersKeepNineSignificantDigits)
{
    TelemetryFrame f;
    f.t = 0.001;
    f.theta_m = 123.456789012345;
    f.tau_sea = -1.23456789012e-5;
    std::ostringstream out;
    write_telemetry_csv(out, std::span<const TelemetryFrame>(&f, 1));
    std::istringstream in(out.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    std::istringstream cells(row);
    std::string cell;
    std::vector<double> values;
    while (std::getline(cells, cell, ',')) values.push_back(std::stod(cell));
    ASSERT_EQ(values.size(), 7u);
    EXPECT_NEAR(values[1], f.theta_m, 1e-9 * std::abs(f.theta_m));
    EXPECT_NEAR(values[6], f.tau_sea, 1e-9 * std::abs(f.tau_sea));
}

TEST(Export, ByteIdenticalReruns)
{
    const Scenario s = bundled("stuck");
    const auto a = scratch_dir("det_a");
    const auto b = scratch_dir("det_b");
    export_csv(s, run(s), a);
    export_csv(s, run(s), b);
    for (const char* file : {"telemetry.csv", "residuals.csv", "report.json"}) {
        EXPECT_EQ(slurp(a / file), slurp(b / file)) << file;
    }
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST(Export, SeedChangesNoise)
{
    const Scenario s = bundled("nominal");
    const RunResult a = run(with_seed(s, 1));
    const RunResult b = run(with_seed(s, 2));
    EXPECT_NE(a.telemetry[100], b.telemetry[100]);
}

TEST(Export, UnwritableDirectory)
{
    const Scenario s = bundled("nominal");
    Scenario shortened = s;
    shortened.duration = 0.01;
    const RunResult r = run(shortened);
    try {
        export_csv(shortened, r, "/proc/seadiag_cannot_write");
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("/proc/seadiag_cannot_write"), std::string::npos);
    }
}
