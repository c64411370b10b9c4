#pragma once

#include <Eigen/Dense>

namespace pga {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// All threshold arithmetic below assumes 64-bit binary floating point.
namespace constants {
// unit roundoff of binary64 and the orthogonality accuracy floor 8*eps_m
inline constexpr double eps_m = 0x1p-52;
inline constexpr double eps_o3 = 0x1p-49;

// antipode guard band of the numerical S2 log (2^31 * eps_m)
inline constexpr double delta_s2 = 0x1p-21;

// case boundaries of the numerical SO(3) log: identity band, small-angle
// band where log(R) = (R - R^T)/2 is accurate enough, and the pi band
// where the axis must be recovered from the diagonal
inline constexpr double delta1 = 0x1p-50;
inline constexpr double delta2 = 0x1p-42;
inline constexpr double delta3 = 0x1p-28;

// lift thresholds: numerically-identical samples, tangent axis flip
// detection, pole proximity
inline constexpr double tau1 = 8 * eps_m;
inline constexpr double tau2 = eps_m;
inline constexpr double tau3 = 4 * eps_m;
}  // namespace constants

// Antisymmetric matrix of n; skew(n)*v = n x v.
Mat3 skew(const Vec3& n);

// Inverse of skew. Rejects matrices that are not antisymmetric to within
// 8*eps_m in the max-norm of N + N^T.
Vec3 unskew(const Mat3& n);

// Scaled Frobenius product Tr(V^T W)/2; makes skew an isometry of R^3.
double so3_inner(const Mat3& v, const Mat3& w);
double so3_norm(const Mat3& v);

struct Svd3 {
    Mat3 u;
    Vec3 sigma;  // descending, nonnegative
    Mat3 v;
};

// Full 3x3 SVD, B = U diag(sigma) V^T. det(B) may have either sign.
Svd3 svd3(const Mat3& b);

struct ThinSvd {
    MatX u;      // m x r
    VecX sigma;  // r, descending, nonnegative
    MatX v;      // n x r
};

// Thin SVD with r = min(m, n).
ThinSvd thin_svd(const MatX& y);

}  // namespace pga
