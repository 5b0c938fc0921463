#pragma once

#include <Eigen/Dense>

#include "aeroarm/spatial.hpp"

namespace aeroarm {

/// Interference depth between the rubbing surfaces as a function of the
/// hinge angle: r(theta) = max(0, r0 + r1*|theta|). Even in theta.
struct BulgeProfile {
    double r0 = 0.003;  // m, interference at theta = 0
    double r1 = 0.010;  // m/rad, linear growth
};

/// One parallelogram stage with spring hinges and frictional bulges.
struct AbsorptionUnitParams {
    double k = 1500.0;   // N/m, equivalent linear spring of the paired hinges
    double kappa = 0.6;  // N·m/rad, torsional hinge coefficient
    double mu = 0.4;     // kinetic friction coefficient
    double mu_s = 0.5;   // static friction coefficient, >= mu
    BulgeProfile bulge;
    double h0 = 0.02;  // m, idle hinge separation
};

/// Lumped 3-DoF end-effector compliance: M_A p'' + D_A v + K_A p = -F_A.
struct LumpedArmParams {
    Mat3 M_A = Mat3::Identity() * 0.02;   // kg
    Mat3 D_A = Mat3::Identity() * 6.0;    // N·s/m
    Mat3 K_A = Mat3::Identity() * 120.0;  // N/m
};

enum class FrictionMode { stuck, slipping };

/// Hinge deflection state plus the friction-energy accumulator, which is
/// nondecreasing over a rollout.
struct HingeState {
    double theta = 0.0;      // rad, deflection from idle extension
    double theta_dot = 0.0;  // rad/s
    FrictionMode mode = FrictionMode::stuck;
    double energy_dissipated = 0.0;  // J
};

double bulge_radius(const BulgeProfile& profile, double theta);

/// Hooke's-law normal-force source at the bulge contact: -k * r(theta).
double spring_force(const AbsorptionUnitParams& params, double theta);

/// Restoring torque of the torsional hinges: -kappa * theta.
double hinge_torque(const AbsorptionUnitParams& params, double theta);

struct FrictionResult {
    double torque;
    FrictionMode mode;
};

/// Karnopp-style stick-slip friction at the bulge contact. In stuck mode
/// the friction cancels tau_applied_other up to the breakaway threshold
/// mu_s*k*r^2; slipping torque is -sign(theta_dot)*mu*k*r^2 until the
/// speed falls inside the stick window and the applied torque is again
/// below breakaway.
FrictionResult friction_torque(const AbsorptionUnitParams& params, double theta,
                               double theta_dot, double tau_applied_other,
                               FrictionMode mode);

/// Upper bound on the dissipative output torque of a unit in motion:
/// r^2*mu*k - r*kappa*theta.
double total_torque_bound(const AbsorptionUnitParams& params, double theta);

struct AbsorptionTorque {
    double net;       // N·m, spring + friction + servo
    double friction;  // N·m, friction contribution alone
};

/// Combined joint torque of one absorption unit. An actively pulling
/// tendon (tau_servo < 0) disengages the bulges: the friction normal
/// force is scaled by disengage_factor (0 = full disengage). Updates the
/// friction mode and accumulates -tau_f*theta_dot*dt into
/// state.energy_dissipated.
AbsorptionTorque absorption_joint_torque(const AbsorptionUnitParams& params,
                                         HingeState& state, double tau_servo, double dt,
                                         double disengage_factor = 0.0);

/// Semi-implicit Euler update of one hinge with rotational inertia
/// `inertia` under the net absorption-unit torque; a stuck joint holds
/// zero velocity. Returns the net torque applied over the step.
double hinge_step(const AbsorptionUnitParams& params, double inertia, HingeState& state,
                  double tau_servo, double dt, double disengage_factor = 0.0);

/// Stick-window speed below which a slipping joint may re-stick.
inline constexpr double kStickVelocity = 1e-3;  // rad/s

/// Semi-implicit Euler update of the lumped tip deflection under the
/// interaction force F_A (the force the arm exerts on the environment).
void lumped_arm_step(const LumpedArmParams& params, Vec3& p_A, Vec3& v_A,
                     const Vec3& F_A, double dt);

}  // namespace aeroarm
