#pragma once

#include <functional>

#include "aeroarm/spatial.hpp"

namespace aeroarm {

/// Rigid multirotor parameters. The 6x6 body inertia is
/// block-diag(mass*I3, inertia_rot); the COM sits at the body origin.
struct VehicleParams {
    double mass = 3.953;                       // kg
    Mat3 inertia_rot = Mat3::Identity() * 0.06;  // kg·m²
    double gravity = 9.81;                     // m/s²

    Mat6 inertia6() const {
        Mat6 M = Mat6::Zero();
        M.topLeftCorner<3, 3>() = mass * Mat3::Identity();
        M.bottomRightCorner<3, 3>() = inertia_rot;
        return M;
    }
};

/// Platform state: position in world, body->world rotation, and
/// body-frame linear/angular velocity. World position rate is p_dot = R*v.
struct VehicleState {
    Vec3 p{Vec3::Zero()};
    Mat3 R{Mat3::Identity()};
    Vec3 v{Vec3::Zero()};
    Vec3 omega{Vec3::Zero()};
};

struct VehicleDeriv {
    Twist accel;    // body-frame v_dot, omega_dot
    Vec3 p_dot;     // world frame
    Vec3 rot_rate;  // body rate feeding integrate_rotation
};

/// Wrenches applied over one integration step, sampled at stage time/state.
/// First element is the command wrench, second the external wrench.
using WrenchFn = std::function<std::pair<Wrench, Wrench>(double t)>;
using WrenchStateFn =
    std::function<std::pair<Wrench, Wrench>(double t, const VehicleState&)>;

/// Gravity term of the body-frame equations of motion. Its force is
/// m*g*R^T*e_z, so commanding exactly this wrench holds a hover.
Wrench gravity_wrench(const VehicleParams& params, const Mat3& R);

/// Newton-Euler bias terms [m*omega x v ; omega x (J*omega)].
Wrench coriolis_wrench(const VehicleParams& params, const Twist& twist);

/// Body-frame accelerations plus kinematic rates for the given wrenches.
VehicleDeriv dynamics_deriv(const VehicleParams& params, const VehicleState& state,
                            const Wrench& tau_c, const Wrench& tau_ext);

/// One classical RK4 step of (p, v, omega) with the rotation advanced on
/// SO(3) through local exponential coordinates. Stage wrenches come from
/// wrench_fn evaluated at the stage offset time in [0, dt] and stage state.
/// Deterministic; dt must lie in (0, 0.01].
VehicleState step_rk4(const VehicleParams& params, const VehicleState& state,
                      const WrenchStateFn& wrench_fn, double dt);

/// Same integrator with wrenches that depend on time only.
VehicleState step_rk4(const VehicleParams& params, const VehicleState& state,
                      const WrenchFn& wrench_fn, double dt);

}  // namespace aeroarm
