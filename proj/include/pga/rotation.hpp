#pragma once

#include "pga/linalg.hpp"

namespace pga {

// Rotations are 3x3 matrices with orth_error(R) = ||R^T R - I||_inf <= eps_o3
// and positive determinant. Tangents are axis-angle vectors n with
// skew(n) in so(3); the scaled Frobenius metric makes ||skew(n)|| = ||n||_2.

// Rodrigues form I + sin(theta) U + (1 - cos(theta)) U^2, U = skew(n/theta);
// identity when ||n|| <= eps_m. Evaluated through the half-angle quadratic
// form so the output keeps orth_error <= eps_o3.
Mat3 exp_so3(const Vec3& n);

struct AxisAngle {
    double theta;  // in [0, pi]
    Vec3 u;        // unit axis, or 0 when theta = 0
};

// Numerical principal log. Four cases on c = (Tr(R)-1)/2 clamped to [-1,1],
// with guard bands delta1 = 2^-50, delta2 = 2^-42, delta3 = 2^-28:
//   c >= 1-delta1          -> theta 0, axis 0
//   c in [1-delta2,1-delta1) -> log(R) = (R-R^T)/2, theta = ||R-R^T||/2
//   c in (-1+delta3,1-delta2) -> theta = arccos(c), axis from R-R^T
//   c <= -1+delta3         -> theta = pi, axis recovered from the diagonal
AxisAngle log_so3(const Mat3& r);

// theta * u of log_so3.
Vec3 log_so3_vec(const Mat3& r);

// Axis recovery near the pi boundary: u_i = sqrt(max(0,(R_ii+1)/2)) with
// sign flips read off the lower triangle; result lexicographically positive.
// Rejects rotations with c > -1 + delta3.
Vec3 boundary_axis(const Mat3& r);

// Closest rotation U V^T from the SVD of B, plus one Newton orthogonalization
// step R(3I - R^T R)/2 only when the raw factor misses eps_o3.
// Rejects det(B) <= 0.
Mat3 proj_so3(const Mat3& b);

struct ProjSo3Detail {
    Mat3 r;                 // final result
    Mat3 raw;               // U V^T before any correction
    double raw_orth_error;  // orth_error of raw
    bool newton_applied;
};

// proj_so3 with the pre-correction factor exposed for accuracy studies.
ProjSo3Detail proj_so3_detail(const Mat3& b);

// ||R^T R - I||_inf, the orthogonality certificate.
double orth_error(const Mat3& r);

// Branch bijection on axis-angle vectors; same formula and boundary
// rejection as branch_map_s2.
Vec3 branch_map_so3(const Vec3& n, int k, int l);

// Single-step lift of R with respect to the previous lifted tangent prev.
// Quick principal return when ||prev|| + theta < pi; a collinear path when
// the new axis is numerically parallel to prev (within 8*eps_o3 relative);
// otherwise branch selection by comparing against the 2pi-wrapped
// representative.
Vec3 lift_map_so3(const Vec3& prev, const Mat3& r);

// arccos of clamped (Tr(R^T S) - 1)/2, in [0, pi]; bi-invariant.
double geodesic_dist_so3(const Mat3& r, const Mat3& s);

}  // namespace pga
