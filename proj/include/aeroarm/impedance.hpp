#pragma once

#include "aeroarm/spatial.hpp"
#include "aeroarm/vehicle.hpp"

namespace aeroarm {

/// Virtual inertia / damping / stiffness of the desired closed loop.
/// M_v must be symmetric positive definite; D_v and K_v positive
/// semidefinite.
struct ImpedanceGains {
    Mat6 M_v{Mat6::Identity()};
    Mat6 D_v{Mat6::Identity()};
    Mat6 K_v{Mat6::Identity()};

    static ImpedanceGains Default(const VehicleParams& params) {
        ImpedanceGains g;
        g.M_v = params.inertia6();
        Vec6 d, k;
        d << 8, 8, 8, 1, 1, 1;
        k << 16, 16, 16, 2, 2, 2;
        g.D_v = d.asDiagonal();
        g.K_v = k.asDiagonal();
        return g;
    }
};

/// Reference pose and velocities. v_d is given in the world frame,
/// omega_d in the desired body frame.
struct Setpoint {
    Vec3 p_d{Vec3::Zero()};
    Mat3 R_d{Mat3::Identity()};
    Vec3 v_d{Vec3::Zero()};
    Vec3 omega_d{Vec3::Zero()};
};

/// Body-frame regulation errors.
struct PoseErrors {
    Vec3 e_p;
    Vec3 e_R;
    Vec3 e_v;
    Vec3 e_omega;

    Vec6 position_vector() const {
        Vec6 e;
        e << e_p, e_R;
        return e;
    }
    Vec6 velocity_vector() const {
        Vec6 e;
        e << e_v, e_omega;
        return e;
    }
};

/// e_p = R^T (p - p_d); e_R = 0.5 (R_d^T R - R^T R_d)^vee;
/// e_v = R^T (R v - v_d); e_omega = omega - R^T R_d omega_d.
PoseErrors pose_errors(const VehicleState& state, const Setpoint& sp);

/// Desired body acceleration of the virtual mass-spring-damper loop:
/// M_v^-1 (tau_ext_hat - D_v [e_v;e_omega] - K_v [e_p;e_R]).
/// Throws SingularGains if M_v is not invertible.
Twist impedance_accel(const ImpedanceGains& gains, const PoseErrors& err,
                      const Wrench& tau_ext_hat);

/// Wrench command that makes the platform track the impedance law by
/// feedback linearization: tau_c = M a_des + c(omega) + g(R) - tau_ext_hat.
/// With a perfect external-wrench estimate, substituting the result into
/// the platform dynamics yields accel == a_des exactly.
Wrench control_wrench(const VehicleParams& params, const ImpedanceGains& gains,
                      const VehicleState& state, const Setpoint& sp,
                      const Wrench& tau_ext_hat);

}  // namespace aeroarm
