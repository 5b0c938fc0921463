#include "aeroarm/arm_kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "aeroarm/errors.hpp"

namespace aeroarm {

namespace {

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

// Wrist point (start of the horizontal l4 link) and distance to the
// shoulder pivot at (l1, 0).
struct TriangleSides {
    double dx;
    double dy;
    double a;
};

TriangleSides triangle_to(const ArmGeometry& geom, const Vec2& target) {
    const Vec2 p3 = target - Vec2(geom.l4, 0.0);
    const double dx = p3.x() - geom.l1;
    const double dy = p3.y();
    return {dx, dy, std::hypot(dx, dy)};
}

}  // namespace

Vec2 forward_kinematics(const ArmGeometry& geom, const JointAngles& q) {
    const double x3 = geom.l1 + geom.l2 * std::cos(q.theta1) +
                      geom.l3 * std::cos(q.theta1 + q.theta2);
    const double y3 = geom.l2 * std::sin(q.theta1) + geom.l3 * std::sin(q.theta1 + q.theta2);
    return {x3 + geom.l4, y3};
}

Eigen::Matrix2d fk_jacobian(const ArmGeometry& geom, const JointAngles& q) {
    const double s1 = std::sin(q.theta1), c1 = std::cos(q.theta1);
    const double s12 = std::sin(q.theta1 + q.theta2), c12 = std::cos(q.theta1 + q.theta2);
    Eigen::Matrix2d J;
    J << -geom.l2 * s1 - geom.l3 * s12, -geom.l3 * s12,
          geom.l2 * c1 + geom.l3 * c12,  geom.l3 * c12;
    return J;
}

JointAngles inverse_kinematics(const ArmGeometry& geom, const Vec2& target) {
    const auto [dx, dy, a] = triangle_to(geom, target);
    const double b = geom.l2;
    const double c = geom.l3;

    if (a < 1e-12) {
        throw DegenerateTarget("inverse_kinematics: wrist coincides with shoulder pivot");
    }
    if (a > b + c + 1e-12 || a < std::abs(b - c) - 1e-12) {
        throw UnreachableTarget("inverse_kinematics: target outside workspace");
    }

    const double alpha = clamped_acos((b * b + c * c - a * a) / (2.0 * b * c));
    const double gamma = clamped_acos((b * b + a * a - c * c) / (2.0 * a * b));
    const double beta = clamped_acos((a * a + c * c - b * b) / (2.0 * a * c));

    // delta measured clockwise from the x-axis; gamma - delta selects the
    // branch on which theta2 <= 0 round-trips through FK.
    const double delta = std::atan2(-dy, dx);

    JointAngles q;
    q.theta1 = gamma - delta;
    q.theta2 = -(M_PI - alpha);
    q.theta3 = beta + delta;
    return q;
}

bool workspace_contains(const ArmGeometry& geom, const Vec2& target) {
    const auto [dx, dy, a] = triangle_to(geom, target);
    (void)dx;
    (void)dy;
    if (a < 1e-12) return false;
    return a <= geom.l2 + geom.l3 + 1e-12 && a >= std::abs(geom.l2 - geom.l3) - 1e-12;
}

double servo_step(ServoModel& servo, double theta_ref, double theta,
                  double load_torque, double dt) {
    (void)load_torque;
    if (!servo.initialized) {
        servo.ref = theta;
        servo.prev_error = 0.0;
        servo.initialized = true;
    }

    // slew the internal reference toward the command
    const double max_step = servo.rate_max * dt;
    servo.ref += std::clamp(theta_ref - servo.ref, -max_step, max_step);

    const double error = servo.ref - theta;
    const double deriv = (error - servo.prev_error) / dt;
    const double integral_cand = servo.integral + error * dt;

    double tau = servo.kp * error + servo.ki * integral_cand + servo.kd * deriv;

    double lo = -servo.tau_max;
    double hi = servo.one_sided ? 0.0 : servo.tau_max;
    if (tau > hi || tau < lo) {
        tau = std::clamp(tau, lo, hi);
        // anti-windup: integral frozen while clamped
    } else {
        servo.integral = integral_cand;
    }
    servo.prev_error = error;
    return tau;
}

}  // namespace aeroarm
