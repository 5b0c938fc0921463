#include "aeroarm/vehicle.hpp"

#include <cassert>
#include <cmath>

#include "aeroarm/errors.hpp"

namespace aeroarm {

Wrench gravity_wrench(const VehicleParams& params, const Mat3& R) {
    Wrench g;
    g.force = params.mass * params.gravity * (R.transpose() * Vec3::UnitZ());
    g.torque.setZero();
    return g;
}

Wrench coriolis_wrench(const VehicleParams& params, const Twist& twist) {
    Wrench c;
    c.force = params.mass * twist.angular.cross(twist.linear);
    c.torque = twist.angular.cross(params.inertia_rot * twist.angular);
    return c;
}

VehicleDeriv dynamics_deriv(const VehicleParams& params, const VehicleState& state,
                            const Wrench& tau_c, const Wrench& tau_ext) {
    const Wrench c = coriolis_wrench(params, {state.v, state.omega});
    const Wrench g = gravity_wrench(params, state.R);

    VehicleDeriv d;
    d.accel.linear = (tau_c.force + tau_ext.force - c.force - g.force) / params.mass;
    d.accel.angular = params.inertia_rot.ldlt().solve(tau_c.torque + tau_ext.torque -
                                                      c.torque - g.torque);
    d.p_dot = state.R * state.v;
    d.rot_rate = state.omega;
    return d;
}

namespace {

// Inverse of the right Jacobian of exp on SO(3), truncated at the second
// Bernoulli term. With body rates entering as R_dot = R*hat(omega), the
// local coordinate obeys phi_dot = Jr^-1(phi) omega; the truncation is
// exact enough for a fourth-order step since phi is O(dt).
Vec3 dexpinv(const Vec3& phi, const Vec3& omega) {
    return omega + 0.5 * phi.cross(omega) + (1.0 / 12.0) * phi.cross(phi.cross(omega));
}

struct StageDeriv {
    Vec3 p_dot;
    Vec3 v_dot;
    Vec3 omega_dot;
    Vec3 phi_dot;
};

StageDeriv eval_stage(const VehicleParams& params, const Mat3& R0, const Vec3& p,
                      const Vec3& v, const Vec3& omega, const Vec3& phi, double t,
                      const WrenchStateFn& wrench_fn) {
    VehicleState s;
    s.p = p;
    s.R = R0 * so3_exp(phi);
    s.v = v;
    s.omega = omega;
    const auto [tau_c, tau_ext] = wrench_fn(t, s);
    const VehicleDeriv d = dynamics_deriv(params, s, tau_c, tau_ext);
    return {d.p_dot, d.accel.linear, d.accel.angular, dexpinv(phi, omega)};
}

}  // namespace

VehicleState step_rk4(const VehicleParams& params, const VehicleState& state,
                      const WrenchStateFn& wrench_fn, double dt) {
    assert(dt > 0.0 && dt <= 0.01);

    const Mat3 R0 = state.R;
    const Vec3 p0 = state.p, v0 = state.v, w0 = state.omega;
    const Vec3 phi0 = Vec3::Zero();

    const StageDeriv k1 = eval_stage(params, R0, p0, v0, w0, phi0, 0.0, wrench_fn);
    const StageDeriv k2 = eval_stage(params, R0, p0 + 0.5 * dt * k1.p_dot,
                                     v0 + 0.5 * dt * k1.v_dot, w0 + 0.5 * dt * k1.omega_dot,
                                     phi0 + 0.5 * dt * k1.phi_dot, 0.5 * dt, wrench_fn);
    const StageDeriv k3 = eval_stage(params, R0, p0 + 0.5 * dt * k2.p_dot,
                                     v0 + 0.5 * dt * k2.v_dot, w0 + 0.5 * dt * k2.omega_dot,
                                     phi0 + 0.5 * dt * k2.phi_dot, 0.5 * dt, wrench_fn);
    const StageDeriv k4 = eval_stage(params, R0, p0 + dt * k3.p_dot, v0 + dt * k3.v_dot,
                                     w0 + dt * k3.omega_dot, phi0 + dt * k3.phi_dot, dt,
                                     wrench_fn);

    const double s = dt / 6.0;
    VehicleState out;
    out.p = p0 + s * (k1.p_dot + 2.0 * k2.p_dot + 2.0 * k3.p_dot + k4.p_dot);
    out.v = v0 + s * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);
    out.omega = w0 + s * (k1.omega_dot + 2.0 * k2.omega_dot + 2.0 * k3.omega_dot + k4.omega_dot);
    const Vec3 phi = s * (k1.phi_dot + 2.0 * k2.phi_dot + 2.0 * k3.phi_dot + k4.phi_dot);
    out.R = R0 * so3_exp(phi);
    return out;
}

VehicleState step_rk4(const VehicleParams& params, const VehicleState& state,
                      const WrenchFn& wrench_fn, double dt) {
    return step_rk4(
        params, state,
        [&wrench_fn](double t, const VehicleState&) { return wrench_fn(t); }, dt);
}

}  // namespace aeroarm
