#pragma once

#include <Eigen/Dense>

namespace aeroarm {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// 6-D force/torque pair, body frame unless stated otherwise.
struct Wrench {
    Vec3 force{Vec3::Zero()};   // N
    Vec3 torque{Vec3::Zero()};  // N·m

    Vec6 vector() const {
        Vec6 w;
        w << force, torque;
        return w;
    }
    static Wrench FromVector(const Vec6& w) { return {w.head<3>(), w.tail<3>()}; }

    Wrench operator+(const Wrench& o) const { return {force + o.force, torque + o.torque}; }
    Wrench operator-(const Wrench& o) const { return {force - o.force, torque - o.torque}; }
    Wrench operator-() const { return {-force, -torque}; }
};

/// 6-D linear/angular velocity pair.
struct Twist {
    Vec3 linear{Vec3::Zero()};   // m/s
    Vec3 angular{Vec3::Zero()};  // rad/s

    Vec6 vector() const {
        Vec6 t;
        t << linear, angular;
        return t;
    }
    static Twist FromVector(const Vec6& t) { return {t.head<3>(), t.tail<3>()}; }
};

/// Skew-symmetric (cross-product) matrix of v: hat(v)*w == v.cross(w).
Mat3 hat(const Vec3& v);

/// Extract the vector from a skew-symmetric matrix.
/// Throws NotSkewSymmetric if ||S + S^T|| exceeds 1e-9.
Vec3 vee(const Mat3& S);

/// True if R^T R = I and det(R) = +1 within tol.
bool is_rotation(const Mat3& R, double tol = 1e-9);

/// Rotation-matrix exponential of hat(phi) via the Rodrigues formula,
/// with a series expansion for ||phi|| below 1e-8.
Mat3 so3_exp(const Vec3& phi);

/// Orientation error 0.5 * vee(R_d^T R - R^T R_d).
Vec3 rotation_error(const Mat3& R_d, const Mat3& R);

/// Propagate R by a constant body rate omega over dt: R * exp(hat(omega*dt)).
Mat3 integrate_rotation(const Mat3& R, const Vec3& omega, double dt);

/// Nearest rotation matrix in the Frobenius sense (polar projection).
/// Throws DegenerateRotation on rank-deficient input.
Mat3 reorthonormalize(const Mat3& R);

}  // namespace aeroarm
