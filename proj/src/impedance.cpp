#include "aeroarm/impedance.hpp"

#include "aeroarm/errors.hpp"

namespace aeroarm {

PoseErrors pose_errors(const VehicleState& state, const Setpoint& sp) {
    PoseErrors e;
    e.e_p = state.R.transpose() * (state.p - sp.p_d);
    e.e_R = rotation_error(sp.R_d, state.R);
    e.e_v = state.v - state.R.transpose() * sp.v_d;  // R^T (R v - v_d)
    e.e_omega = state.omega - state.R.transpose() * sp.R_d * sp.omega_d;
    return e;
}

Twist impedance_accel(const ImpedanceGains& gains, const PoseErrors& err,
                      const Wrench& tau_ext_hat) {
    Eigen::FullPivLU<Mat6> lu(gains.M_v);
    if (!lu.isInvertible()) {
        throw SingularGains("impedance_accel: M_v is not invertible");
    }
    const Vec6 rhs = tau_ext_hat.vector() - gains.D_v * err.velocity_vector() -
                     gains.K_v * err.position_vector();
    return Twist::FromVector(lu.solve(rhs));
}

Wrench control_wrench(const VehicleParams& params, const ImpedanceGains& gains,
                      const VehicleState& state, const Setpoint& sp,
                      const Wrench& tau_ext_hat) {
    const PoseErrors err = pose_errors(state, sp);
    const Twist a_des = impedance_accel(gains, err, tau_ext_hat);

    const Wrench c = coriolis_wrench(params, {state.v, state.omega});
    const Wrench g = gravity_wrench(params, state.R);

    Wrench tau_c;
    tau_c.force = params.mass * a_des.linear + c.force + g.force - tau_ext_hat.force;
    tau_c.torque =
        params.inertia_rot * a_des.angular + c.torque + g.torque - tau_ext_hat.torque;
    return tau_c;
}

}  // namespace aeroarm
