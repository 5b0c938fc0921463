#include "aeroarm/spatial.hpp"

#include <cmath>

#include "aeroarm/errors.hpp"

namespace aeroarm {

Mat3 hat(const Vec3& v) {
    Mat3 S;
    S << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return S;
}

Vec3 vee(const Mat3& S) {
    if ((S + S.transpose()).norm() > 1e-9) {
        throw NotSkewSymmetric("vee: matrix is not skew-symmetric");
    }
    return {S(2, 1), S(0, 2), S(1, 0)};
}

bool is_rotation(const Mat3& R, double tol) {
    return (R.transpose() * R - Mat3::Identity()).norm() <= tol &&
           std::abs(R.determinant() - 1.0) <= tol;
}

Mat3 so3_exp(const Vec3& phi) {
    const double theta = phi.norm();
    double a, b;  // coefficients of hat(phi) and hat(phi)^2
    if (theta < 1e-8) {
        // sin(t)/t and (1-cos(t))/t^2 by series; avoids 0/0
        const double t2 = theta * theta;
        a = 1.0 - t2 / 6.0;
        b = 0.5 - t2 / 24.0;
    } else {
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / (theta * theta);
    }
    const Mat3 S = hat(phi);
    return Mat3::Identity() + a * S + b * (S * S);
}

Vec3 rotation_error(const Mat3& R_d, const Mat3& R) {
    const Mat3 E = R_d.transpose() * R - R.transpose() * R_d;
    return 0.5 * Vec3(E(2, 1), E(0, 2), E(1, 0));
}

Mat3 integrate_rotation(const Mat3& R, const Vec3& omega, double dt) {
    return R * so3_exp(omega * dt);
}

Mat3 reorthonormalize(const Mat3& R) {
    Eigen::JacobiSVD<Mat3> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(2) < 1e-12) {
        throw DegenerateRotation("reorthonormalize: rank-deficient input");
    }
    Mat3 U = svd.matrixU();
    Mat3 V = svd.matrixV();
    // keep det = +1
    if ((U * V.transpose()).determinant() < 0.0) {
        U.col(2) *= -1.0;
    }
    return U * V.transpose();
}

}  // namespace aeroarm
