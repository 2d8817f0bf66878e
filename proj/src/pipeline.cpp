#include "seadiag/pipeline.hpp"

namespace seadiag {

RunResult run(const Scenario& scenario, const RunOptions& options)
{
    validate(scenario);

    const JointParams& params = scenario.params;
    const int decimation = scenario.decimation();
    const std::size_t samples = scenario.sample_count();

    NoiseSpec noise = scenario.noise;
    noise.seed = scenario.seed;
    NoiseBank noise_bank(noise, scenario.sensor_rate);

    std::vector<FaultInjector> injectors;
    for (const FaultSpec& f : scenario.faults) {
        if (f.kind != FaultKind::none) injectors.emplace_back(f);
    }

    ResidualGenerator residuals(params, scenario.sensor_rate, scenario.cutoff_hz);
    Detector detector(scenario.thresholds);

    RunResult out;
    out.telemetry.reserve(samples);
    out.residuals.reserve(samples);
    if (options.record_truth) out.truth.reserve(samples);

    PlantState state = initial_state(params, scenario.excitation);
    long long steps = 0;
    for (std::size_t n = 0; n < samples; ++n) {
        if (n > 0) {
            for (int k = 0; k < decimation; ++k) {
                state = step(params, state, scenario.excitation, scenario.dt);
                state.t = static_cast<double>(++steps) * scenario.dt;
            }
        }

        TelemetryFrame frame = measure(state, params, noise_bank);
        frame.t = static_cast<double>(n) / scenario.sensor_rate;
        for (FaultInjector& injector : injectors) {
            frame = injector.apply(frame);
        }

        const ResidualFrame residual = residuals.step(frame);
        detector.observe(residual);

        out.telemetry.push_back(frame);
        out.residuals.push_back(residual);
        if (options.record_truth) out.truth.push_back(state);
    }
    out.report = detector.report();
    return out;
}

} // namespace seadiag
