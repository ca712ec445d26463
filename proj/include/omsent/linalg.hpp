#pragma once

#include <Eigen/Dense>

namespace omsent {

// Quadrature ordering throughout: (x_c, p_c, x_m, p_m), with
// x = (a + a^dag)/sqrt(2) and p = (a - a^dag)/(i sqrt(2)).
using Mat4 = Eigen::Matrix4d;
using Mat42 = Eigen::Matrix<double, 4, 2>;
using Vec4 = Eigen::Vector4d;

/// Two-mode symplectic form, diag(J, J) with J = [[0, 1], [-1, 0]].
inline Mat4 symplectic_form() {
    Mat4 omega = Mat4::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

inline double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace omsent
