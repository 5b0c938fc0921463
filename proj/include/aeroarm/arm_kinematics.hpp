#pragma once

#include <Eigen/Dense>

namespace aeroarm {

using Vec2 = Eigen::Vector2d;

/// Link lengths of the stacked four-bar chain. l1 is the fixed offset to
/// the shoulder pivot, l2/l3 the two moving stages, l4 the horizontal
/// end-effector link kept parallel to the base by the parallelograms.
struct ArmGeometry {
    double l1 = 0.03;  // m
    double l2 = 0.11;
    double l3 = 0.11;
    double l4 = 0.05;
};

/// theta1/theta2 are the actuated shoulder and elbow angles; theta3 is the
/// passive angle closing the chain. theta2 stays in [-pi, 0]: the tendons
/// only pull the stages into compression.
struct JointAngles {
    double theta1 = 0.0;  // rad
    double theta2 = 0.0;
    double theta3 = 0.0;
};

/// PID joint tracker with stall-torque saturation.
struct ServoModel {
    double kp = 8.0;
    double ki = 2.0;
    double kd = 0.2;
    double tau_max = 1.4;    // N·m, stall torque
    double rate_max = 6.0;   // rad/s, reference slew limit
    bool one_sided = false;  // tendon can only pull (tau <= 0)

    // controller state, owned by one rollout
    double integral = 0.0;
    double prev_error = 0.0;
    double ref = 0.0;
    bool initialized = false;
};

/// Planar end-effector position for the given joint angles. The last link
/// never rotates, so p4 = p3 + (l4, 0).
Vec2 forward_kinematics(const ArmGeometry& geom, const JointAngles& q);

/// d(tip)/d(theta1, theta2), for tip velocity from joint rates.
Eigen::Matrix2d fk_jacobian(const ArmGeometry& geom, const JointAngles& q);

/// Geometric inverse kinematics on the compression branch (theta2 <= 0).
/// Throws UnreachableTarget when the triangle inequality fails and
/// DegenerateTarget when the wrist lands on the shoulder pivot.
JointAngles inverse_kinematics(const ArmGeometry& geom, const Vec2& target);

/// True iff the target passes the same reachability test IK applies.
bool workspace_contains(const ArmGeometry& geom, const Vec2& target);

/// One PID update. Returns the applied torque, clamped to [-tau_max,
/// tau_max] with the integral frozen while clamped; with one_sided set the
/// output is additionally limited to tau <= 0. load_torque is the current
/// mechanical load, available to callers for logging or feedforward; the
/// control law itself does not consume it.
double servo_step(ServoModel& servo, double theta_ref, double theta,
                  double load_torque, double dt);

}  // namespace aeroarm
