#include "seadiag/plant.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace seadiag;

namespace {

Excitation voltage(double amplitude, double frequency, double offset = 0.0)
{
    return Excitation{ExcitationKind::open_loop_voltage, amplitude, frequency, offset};
}

std::vector<PlantState> simulate(const JointParams& p, const Excitation& e, double dt,
                                 double duration)
{
    const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
    std::vector<PlantState> out{initial_state(p, e)};
    out.reserve(steps + 1);
    for (std::size_t n = 0; n < steps; ++n) {
        PlantState next = step(p, out.back(), e, dt);
        next.t = static_cast<double>(n + 1) * dt;
        out.push_back(next);
    }
    return out;
}

/// theta_m that puts a spring deflection of `d` at load angle theta_l.
double motor_angle_for(const JointParams& p, double theta_l, double d)
{
    return p.g1 * (theta_l - d);
}

} // namespace

TEST(SpringTorque, ZeroDeflection)
{
    JointParams p;
    EXPECT_DOUBLE_EQ(true_spring_torque(p, 3.0, motor_angle_for(p, 3.0, 0.0)), 0.0);
}

TEST(SpringTorque, ReferenceCoefficients)
{
    JointParams p;
    EXPECT_NEAR(true_spring_torque(p, 10.0, motor_angle_for(p, 10.0, 1.0)), 100.02, 1e-9);
    EXPECT_NEAR(true_spring_torque(p, 10.0, motor_angle_for(p, 10.0, -0.5)), -49.995, 1e-9);
}

TEST(PlantDerivatives, EquilibriumAtRest)
{
    JointParams p;
    const PlantRates r = plant_derivatives(p, PlantState{}, 0.0);
    EXPECT_EQ(r.theta_g, 0.0);
    EXPECT_EQ(r.omega_g, 0.0);
    EXPECT_EQ(r.theta_l, 0.0);
    EXPECT_EQ(r.omega_l, 0.0);
    EXPECT_EQ(r.i_m, 0.0);
}

TEST(PlantDerivatives, DecoupledTerms)
{
    JointParams p;
    PlantState s;
    s.theta_l = 2.0;
    s.theta_g = 2.0;  // no deflection
    s.i_m = 1.0;
    const double v = 3.0;
    const PlantRates r = plant_derivatives(p, s, v);
    EXPECT_NEAR(r.omega_g, p.k_t * p.g1 / p.j_gear, 1e-12);
    EXPECT_NEAR(r.i_m, (v - p.r_motor) / p.l_motor, 1e-9);
    EXPECT_EQ(r.omega_l, 0.0);
}

TEST(PlantDerivatives, SpringPullsLoadTowardGearbox)
{
    JointParams p;
    PlantState s;
    s.theta_l = 0.1;  // load leads gearbox
    const PlantRates r = plant_derivatives(p, s, 0.0);
    EXPECT_LT(r.omega_l, 0.0);
    EXPECT_GT(r.omega_g, 0.0);
}

TEST(PlantStep, RestStaysAtRest)
{
    JointParams p;
    const Excitation off = voltage(0.0, 0.0);
    PlantState s = initial_state(p, off);
    for (double dt : {1e-4, 5e-4, 2e-3}) {
        const PlantState next = step(p, s, off, dt);
        EXPECT_EQ(next.theta_g, 0.0);
        EXPECT_EQ(next.theta_l, 0.0);
        EXPECT_EQ(next.omega_l, 0.0);
        EXPECT_EQ(next.i_m, 0.0);
    }
}

TEST(PlantStep, NonFiniteStateReportsTime)
{
    JointParams p;
    PlantState s;
    s.t = 1.25;
    s.omega_l = std::numeric_limits<double>::quiet_NaN();
    try {
        step(p, s, voltage(1.0, 1.0), 1e-3);
        FAIL() << "expected IntegrationError";
    } catch (const IntegrationError& e) {
        EXPECT_DOUBLE_EQ(e.time(), 1.25);
    }
}

TEST(PlantStep, RejectsNonPositiveStep)
{
    JointParams p;
    EXPECT_THROW(step(p, PlantState{}, voltage(1.0, 1.0), 0.0), ConfigError);
}

TEST(PlantStep, Deterministic)
{
    JointParams p;
    const auto a = simulate(p, voltage(6.8, 2.0), 5e-4, 1.0);
    const auto b = simulate(p, voltage(6.8, 2.0), 5e-4, 1.0);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].theta_l, b[i].theta_l);
        EXPECT_EQ(a[i].i_m, b[i].i_m);
    }
}

TEST(PlantStep, HalvingStepBarelyMovesTrajectory)
{
    JointParams p;
    const Excitation e = voltage(6.8, 2.0);
    const auto coarse = simulate(p, e, 5e-4, 10.0);
    const auto fine = simulate(p, e, 2.5e-4, 10.0);
    double worst = 0.0;
    for (std::size_t n = 0; n < coarse.size(); ++n) {
        worst = std::max(worst, std::abs(coarse[n].theta_l - fine[2 * n].theta_l));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(PlantStep, ZeroInductanceKeepsCurrentAlgebraic)
{
    JointParams p;
    p.l_motor = 0.0;
    const Excitation e = voltage(5.0, 3.0);
    for (const PlantState& s : simulate(p, e, 5e-4, 0.5)) {
        EXPECT_NEAR(s.v_m, s.i_m * p.r_motor + p.k_e * s.omega_m(p), 1e-12);
    }
}

TEST(PlantStep, CurrentDriveFollowsCommand)
{
    JointParams p;
    const Excitation e{ExcitationKind::open_loop_current, 2.0, 1.5, 0.5};
    for (const PlantState& s : simulate(p, e, 5e-4, 0.5)) {
        EXPECT_NEAR(s.i_m, e.value(s.t), 1e-12);
        EXPECT_NEAR(s.v_m, s.i_m * p.r_motor + p.l_motor * e.rate(s.t) + p.k_e * s.omega_m(p),
                    1e-9);
    }
}

// With a DC voltage offset the joint settles into a constant drift. Over whole
// drive periods the load cannot keep accelerating, so the mean spring torque
// vanishes and the motor torque is spent entirely on viscous damping.
TEST(PlantStep, SteadyStateTorqueBalance)
{
    JointParams p;
    const Excitation e = voltage(6.8, 2.0, 1.0);
    const auto traj = simulate(p, e, 5e-4, 20.0);

    double spring = 0.0;
    double motor = 0.0;
    double damping = 0.0;
    std::size_t count = 0;
    for (const PlantState& s : traj) {
        if (s.t < 10.0 || s.t >= 20.0) continue;
        spring += true_spring_torque(p, s.theta_l, s.theta_m(p));
        motor += p.k_t * p.g1 * s.i_m;
        damping += p.b_gear * s.omega_g;
        ++count;
    }
    spring /= count;
    motor /= count;
    damping /= count;
    ASSERT_GT(std::abs(motor), 0.5);
    EXPECT_LT(std::abs(spring), 0.01 * std::abs(motor));
    EXPECT_NEAR(motor, damping, 0.01 * std::abs(motor));
}

// Electrical energy in = resistive loss + magnetic energy + mechanical
// (kinetic + spring + viscous). Mechanical terms use deg-based units, so they
// are converted with pi/180; this only balances because k_e = k_t * pi/180.
TEST(PlantStep, EnergyAudit)
{
    JointParams p;
    p.k_e = p.k_t * std::numbers::pi / 180.0;
    const Excitation e = voltage(6.8, 2.0);
    const double dt = 1e-4;
    const auto traj = simulate(p, e, dt, 2.0);

    auto spring_energy = [&](const PlantState& s) {
        const double d = s.theta_l - s.theta_g;
        return 0.5 * p.k1 * d * d + p.k2 * d * d * d / 3.0;
    };

    // Composite Simpson over the power signals.
    double electrical_in = 0.0;
    double resistive = 0.0;
    double viscous = 0.0;
    const std::size_t n = traj.size() - 1;
    ASSERT_EQ(n % 2, 0u);
    for (std::size_t i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const PlantState& s = traj[i];
        electrical_in += w * s.v_m * s.i_m;
        resistive += w * s.i_m * s.i_m * p.r_motor;
        viscous += w * p.b_gear * s.omega_g * s.omega_g;
    }
    electrical_in *= dt / 3.0;
    resistive *= dt / 3.0;
    viscous *= dt / 3.0;

    const PlantState& end = traj.back();
    const double deg = std::numbers::pi / 180.0;
    const double kinetic = 0.5 * (p.j_gear * end.omega_g * end.omega_g
                                  + p.j_load * end.omega_l * end.omega_l);
    const double stored_mech = (kinetic + spring_energy(end) + viscous) * deg;
    const double magnetic = 0.5 * p.l_motor * end.i_m * end.i_m;
    const double accounted = resistive + magnetic + stored_mech;

    ASSERT_GT(electrical_in, 1.0);
    EXPECT_NEAR(electrical_in, accounted, 1e-5 * electrical_in);
}

TEST(JointParamsValidation, DefaultsAreConsistent)
{
    EXPECT_NO_THROW(validate(JointParams{}));
}

TEST(JointParamsValidation, DerivedSeriesStiffness)
{
    JointParams p;
    p.k_eq = 80.0;
    derive_series_stiffness(p);
    EXPECT_DOUBLE_EQ(p.k_sea, 100.0);
    EXPECT_DOUBLE_EQ(p.k_gear, 400.0);
    EXPECT_NEAR(1.0 / p.k_sea + 1.0 / p.k_gear, 1.0 / p.k_eq, 1e-15);
}

TEST(JointParamsValidation, NamesBadField)
{
    JointParams p;
    p.k_eq = -80.0;
    try {
        validate(p);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "k_eq");
    }

    p = JointParams{};
    p.k_gear = 300.0;
    EXPECT_THROW(validate(p), ConfigError);

    p = JointParams{};
    p.l_motor = -1e-3;
    EXPECT_THROW(validate(p), ConfigError);
}

TEST(JointParamsValidation, RigidGearTrain)
{
    JointParams p;
    p.k_eq = p.k_sea = 100.0;
    p.k_gear = std::numeric_limits<double>::infinity();
    EXPECT_NO_THROW(validate(p));
}
