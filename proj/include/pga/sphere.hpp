#pragma once

#include "pga/linalg.hpp"

namespace pga {

// Directors are unit vectors (|1 - norm| <= 8*eps_m); tangents at d live in
// the ambient R^3 representation of {d}^perp. Branch index k names the
// annulus A_k = D_{(k+1)pi} \ closure(D_{k pi}) of T_d S^2 (A_0 = D_pi \ {0}).

// exp_d: returns d when ||v|| <= eps_m, else cos(theta) d + sin(theta)/theta v.
Vec3 exp_s2(const Vec3& d, const Vec3& v);

// Numerical principal log with the antipode guard band delta_s2 = 2^-21:
// c = <d,e>, p = e - c d, s = ||p||. When c > -1 + delta_s2, returns 0 for
// s <= 32 eps_m and (arccos(c)/s) p otherwise; in the antipode band returns
// arccos(c) (p/s), normalized first, with an arbitrary perpendicular
// representative of norm pi when s = 0.
Vec3 log_s2(const Vec3& d, const Vec3& e);

// x / ||x||; rejects the zero vector.
Vec3 proj_s2(const Vec3& x);

// Branch bijection Phi_kl between annuli A_k and A_l, axis-angle v = theta u:
// (l-k) even -> [(l-k)pi + theta] u, odd -> [(l+k+1)pi - theta] (-u).
// Rejects v whose norm sits on a branch boundary (within 4*eps_m of a
// multiple of pi, scaled by max(1, theta)).
Vec3 branch_map_s2(const Vec3& v, int k, int l);

struct LiftStepS2 {
    Vec3 v;
    int branch;
};

// Single-step lift of e with respect to the previous lifted tangent
// prev = theta u in closure(A_k). Boundary cases (e within tau3 of +-d)
// return the adjacent boundary vector of A_k and keep k; otherwise the
// branch switches exactly when the connecting geodesic runs through +-d.
LiftStepS2 lift_map_s2(const Vec3& d, const Vec3& prev, int k, const Vec3& e);

struct NorthCoords {
    double a;
    double b;
};

// First two components of R(base) v, where R(base) rotates base onto the
// north pole: (v1 - d1 q v3, v2 - d2 q v3) with q = 1/(1 + d3). An isometry
// T_d S^2 -> R^2. Rejects bases within 1e-8 of the south pole.
NorthCoords north_rotation_coords(const Vec3& base, const Vec3& v);

// Inverse of north_rotation_coords: the tangent v at base with
// R(base) v = (a, b, 0).
Vec3 north_rotation_inverse(const Vec3& base, double a, double b);

// arccos of the clamped dot product, in [0, pi].
double geodesic_dist_s2(const Vec3& d, const Vec3& e);

// |1 - ||d|||, the Director normality certificate.
double normality_error(const Vec3& d);

}  // namespace pga
