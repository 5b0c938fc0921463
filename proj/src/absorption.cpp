#include "aeroarm/absorption.hpp"

#include <algorithm>
#include <cmath>

namespace aeroarm {

double bulge_radius(const BulgeProfile& profile, double theta) {
    return std::max(0.0, profile.r0 + profile.r1 * std::abs(theta));
}

double spring_force(const AbsorptionUnitParams& params, double theta) {
    return -params.k * bulge_radius(params.bulge, theta);
}

double hinge_torque(const AbsorptionUnitParams& params, double theta) {
    return -params.kappa * theta;
}

FrictionResult friction_torque(const AbsorptionUnitParams& params, double theta,
                               double theta_dot, double tau_applied_other,
                               FrictionMode mode) {
    const double r = bulge_radius(params.bulge, theta);
    const double normal_force = params.k * r;  // |spring_force|
    const double breakaway = r * params.mu_s * normal_force;
    const double kinetic = r * params.mu * normal_force;

    if (mode == FrictionMode::slipping && std::abs(theta_dot) < kStickVelocity &&
        std::abs(tau_applied_other) <= breakaway) {
        mode = FrictionMode::stuck;
    }

    if (mode == FrictionMode::stuck) {
        if (std::abs(tau_applied_other) <= breakaway) {
            return {-tau_applied_other, FrictionMode::stuck};
        }
        // breakaway: slide starts against the applied torque
        const double dir = theta_dot != 0.0 ? theta_dot : tau_applied_other;
        return {-std::copysign(kinetic, dir), FrictionMode::slipping};
    }

    if (theta_dot == 0.0) {
        return {-std::copysign(kinetic, tau_applied_other), FrictionMode::slipping};
    }
    return {-std::copysign(kinetic, theta_dot), FrictionMode::slipping};
}

double total_torque_bound(const AbsorptionUnitParams& params, double theta) {
    const double r = bulge_radius(params.bulge, theta);
    return r * r * params.mu * params.k - r * params.kappa * theta;
}

AbsorptionTorque absorption_joint_torque(const AbsorptionUnitParams& params,
                                         HingeState& state, double tau_servo, double dt,
                                         double disengage_factor) {
    AbsorptionUnitParams effective = params;
    if (tau_servo < 0.0) {
        // pulling tendon lifts the bulges off their track
        effective.k = params.k * disengage_factor;
    }

    const double tau_spring = hinge_torque(params, state.theta);
    const double tau_other = tau_spring + tau_servo;
    const FrictionResult f =
        friction_torque(effective, state.theta, state.theta_dot, tau_other, state.mode);
    state.mode = f.mode;

    if (state.mode == FrictionMode::slipping) {
        state.energy_dissipated += std::max(0.0, -f.torque * state.theta_dot * dt);
    }
    return {tau_other + f.torque, f.torque};
}

double hinge_step(const AbsorptionUnitParams& params, double inertia, HingeState& state,
                  double tau_servo, double dt, double disengage_factor) {
    const AbsorptionTorque tau =
        absorption_joint_torque(params, state, tau_servo, dt, disengage_factor);
    if (state.mode == FrictionMode::stuck) {
        state.theta_dot = 0.0;
    } else {
        state.theta_dot += dt * tau.net / inertia;
    }
    state.theta += dt * state.theta_dot;
    return tau.net;
}

void lumped_arm_step(const LumpedArmParams& params, Vec3& p_A, Vec3& v_A,
                     const Vec3& F_A, double dt) {
    // damping handled implicitly so stiff D_A stays stable at the
    // scenario step sizes
    const Mat3 lhs = params.M_A + dt * params.D_A;
    const Vec3 rhs = params.M_A * v_A + dt * (-F_A - params.K_A * p_A);
    v_A = lhs.ldlt().solve(rhs);
    p_A += dt * v_A;
}

}  // namespace aeroarm
