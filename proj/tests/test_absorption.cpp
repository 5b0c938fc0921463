#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aeroarm/absorption.hpp"

using namespace aeroarm;

namespace {

// flat 10 mm bulge with a soft spring: the worked numbers below stay exact
AbsorptionUnitParams bench_params() {
    AbsorptionUnitParams p;
    p.k = 100.0;
    p.kappa = 0.2;
    p.mu = 0.5;
    p.mu_s = 0.5;
    p.bulge.r0 = 0.01;
    p.bulge.r1 = 0.0;
    return p;
}

}  // namespace

TEST_CASE("bulge radius grows linearly with deflection magnitude") {
    BulgeProfile b;
    b.r0 = 0.002;
    b.r1 = 0.004;
    CHECK(bulge_radius(b, 0.5) == doctest::Approx(0.004).epsilon(1e-15));
    CHECK(bulge_radius(b, -0.5) == bulge_radius(b, 0.5));
    CHECK(bulge_radius(b, 0.0) == 0.002);
    // the radius is clamped at zero once a (nonphysical) profile shrinks past it
    b.r1 = -0.004;
    CHECK(bulge_radius(b, 10.0) == 0.0);
}

TEST_CASE("bulge normal force is Hooke's law on the current radius") {
    const AbsorptionUnitParams p = bench_params();
    CHECK(spring_force(p, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    AbsorptionUnitParams doubled = p;
    doubled.k = 200.0;
    CHECK(spring_force(doubled, 0.0) == doctest::Approx(2.0 * spring_force(p, 0.0)).epsilon(1e-15));
}

TEST_CASE("hinge torque restores toward the idle angle") {
    const AbsorptionUnitParams p = bench_params();
    CHECK(hinge_torque(p, 0.5) == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(hinge_torque(p, -0.5) == -hinge_torque(p, 0.5));
    CHECK(hinge_torque(p, 0.0) == 0.0);
}

TEST_CASE("slipping friction opposes the sliding direction") {
    const AbsorptionUnitParams p = bench_params();
    const FrictionResult fwd = friction_torque(p, 0.0, 1.0, 0.0, FrictionMode::slipping);
    CHECK(fwd.torque == doctest::Approx(-0.005).epsilon(1e-15));
    CHECK(fwd.mode == FrictionMode::slipping);

    const FrictionResult rev = friction_torque(p, 0.0, -1.0, 0.0, FrictionMode::slipping);
    CHECK(rev.torque == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(rev.mode == FrictionMode::slipping);
}

TEST_CASE("stuck friction cancels loads below breakaway, then slides") {
    AbsorptionUnitParams p = bench_params();
    p.mu = 0.4;  // kinetic 0.004, breakaway 0.005
    const FrictionResult held = friction_torque(p, 0.0, 0.0, 4e-3, FrictionMode::stuck);
    CHECK(held.torque == -4e-3);
    CHECK(held.mode == FrictionMode::stuck);

    const FrictionResult broke = friction_torque(p, 0.0, 0.0, 6e-3, FrictionMode::stuck);
    CHECK(broke.mode == FrictionMode::slipping);
    CHECK(broke.torque == doctest::Approx(-0.004).epsilon(1e-12));
}

TEST_CASE("a slow, lightly loaded slipping joint re-sticks") {
    AbsorptionUnitParams p = bench_params();
    p.mu = 0.4;
    // inside the stick window and below breakaway
    const FrictionResult r =
        friction_torque(p, 0.0, 0.5 * kStickVelocity, 1e-3, FrictionMode::slipping);
    CHECK(r.mode == FrictionMode::stuck);
    CHECK(r.torque == -1e-3);

    // same speed but the load exceeds breakaway: keeps sliding
    const FrictionResult s =
        friction_torque(p, 0.0, 0.5 * kStickVelocity, 6e-3, FrictionMode::slipping);
    CHECK(s.mode == FrictionMode::slipping);

    // fast joints never re-stick regardless of load
    const FrictionResult f =
        friction_torque(p, 0.0, 10.0 * kStickVelocity, 1e-3, FrictionMode::slipping);
    CHECK(f.mode == FrictionMode::slipping);
}

TEST_CASE("dissipative torque bound matches the worked value") {
    const AbsorptionUnitParams p = bench_params();
    CHECK(total_torque_bound(p, 0.5) == doctest::Approx(0.004).epsilon(1e-12));
    // at zero deflection only the friction term survives
    CHECK(total_torque_bound(p, 0.0) ==
          doctest::Approx(p.bulge.r0 * p.bulge.r0 * p.mu * p.k).epsilon(1e-15));
    AbsorptionUnitParams no_hinge = p;
    no_hinge.kappa = 0.0;
    CHECK(total_torque_bound(no_hinge, 0.7) == total_torque_bound(no_hinge, -0.7));
}

TEST_CASE("an idle unit produces no torque and stays stuck") {
    const AbsorptionUnitParams p;  // stock values
    HingeState st;
    const AbsorptionTorque tau = absorption_joint_torque(p, st, 0.0, 1e-3);
    CHECK(tau.net == 0.0);
    CHECK(tau.friction == 0.0);
    CHECK(st.mode == FrictionMode::stuck);
    CHECK(st.energy_dissipated == 0.0);
}

TEST_CASE("a pulling tendon lifts the bulges and removes friction") {
    const AbsorptionUnitParams p;  // kappa = 0.6
    HingeState st;
    st.theta = 0.3;
    const AbsorptionTorque tau = absorption_joint_torque(p, st, -0.2, 1e-3, 0.0);
    CHECK(tau.friction == 0.0);
    // spring plus servo pass through undamped
    CHECK(tau.net == doctest::Approx(-0.6 * 0.3 - 0.2).epsilon(1e-14));
    CHECK(st.mode == FrictionMode::slipping);
}

TEST_CASE("friction energy only accumulates while slipping") {
    const AbsorptionUnitParams p;
    HingeState st;
    st.theta = 0.4;
    st.theta_dot = 2.0;
    st.mode = FrictionMode::slipping;
    double prev = 0.0;
    for (int k = 0; k < 50; ++k) {
        (void)absorption_joint_torque(p, st, 0.0, 1e-4);
        if (st.mode == FrictionMode::slipping && st.theta_dot != 0.0) {
            CHECK(st.energy_dissipated > prev);
        } else {
            CHECK(st.energy_dissipated == prev);
        }
        prev = st.energy_dissipated;
        st.theta_dot *= 0.9;  // decay the externally imposed speed
    }
    CHECK(prev > 0.0);
}

TEST_CASE("hinge ring-down dissipates energy monotonically") {
    const AbsorptionUnitParams p;
    const double inertia = 2e-3;
    const double dt = 1e-4;
    HingeState st;
    st.theta = 0.6;
    st.mode = FrictionMode::stuck;

    auto mech = [&] {
        return 0.5 * inertia * st.theta_dot * st.theta_dot +
               0.5 * p.kappa * st.theta * st.theta;
    };
    const double e0 = mech();
    double prev = e0;
    for (int k = 0; k < 30000; ++k) {
        hinge_step(p, inertia, st, 0.0, dt);
        const double e = mech();
        CHECK(e <= prev + 1e-6);
        prev = e;
    }
    CHECK(st.mode == FrictionMode::stuck);
    CHECK(st.theta_dot == 0.0);
    // the final rest angle is one the static friction can actually hold
    const double r = bulge_radius(p.bulge, st.theta);
    CHECK(std::abs(p.kappa * st.theta) <= p.mu_s * p.k * r * r + 1e-9);
    // audit: the mechanical energy lost shows up in the friction accumulator
    CHECK(std::abs((e0 - mech()) - st.energy_dissipated) <= 0.02 * e0);
}

TEST_CASE("lumped tip stays exactly at rest without forcing") {
    const LumpedArmParams p;
    Vec3 pos = Vec3::Zero(), vel = Vec3::Zero();
    for (int k = 0; k < 100; ++k) lumped_arm_step(p, pos, vel, Vec3::Zero(), 1e-3);
    CHECK(pos.norm() == 0.0);
    CHECK(vel.norm() == 0.0);
}

TEST_CASE("lumped tip settles where the spring balances the load") {
    const LumpedArmParams p;
    Vec3 pos = Vec3::Zero(), vel = Vec3::Zero();
    const Vec3 F(1.0, 0.5, -2.0);
    for (int k = 0; k < 5000; ++k) lumped_arm_step(p, pos, vel, F, 1e-3);
    CHECK((p.K_A * pos + F).norm() <= 1e-6);
    CHECK(vel.norm() <= 1e-6);
}

TEST_CASE("lumped free response tracks the closed-form damped sine") {
    LumpedArmParams p;
    p.M_A = Mat3::Identity();
    p.D_A = Mat3::Identity() * 0.4;
    p.K_A = Mat3::Identity() * 25.0;
    Vec3 pos = Vec3::Zero(), vel(1.0, 0.0, 0.0);

    const double wn = 5.0, zeta = 0.04;
    const double wd = wn * std::sqrt(1.0 - zeta * zeta);
    const double dt = 1e-4;
    double worst = 0.0;
    for (int k = 1; k <= 20000; ++k) {
        lumped_arm_step(p, pos, vel, Vec3::Zero(), dt);
        const double t = k * dt;
        const double exact = std::exp(-zeta * wn * t) * std::sin(wd * t) / wd;
        worst = std::max(worst, std::abs(pos.x() - exact));
        CHECK(pos.y() == 0.0);
        CHECK(pos.z() == 0.0);
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("lumped energy never grows under the implicit damping update") {
    const LumpedArmParams p;
    Vec3 pos(0.01, -0.02, 0.005), vel(0.5, -0.3, 0.2);
    auto energy = [&] {
        return 0.5 * vel.dot(p.M_A * vel) + 0.5 * pos.dot(p.K_A * pos);
    };
    double prev = energy();
    for (int k = 0; k < 3000; ++k) {
        lumped_arm_step(p, pos, vel, Vec3::Zero(), 1e-3);
        const double e = energy();
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
    CHECK(prev <= 1e-9);
}
