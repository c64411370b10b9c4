#include "pga/rotation.hpp"

#include <algorithm>
#include <cmath>

#include "pga/errors.hpp"
#include "pga/sphere.hpp"

namespace pga {

using constants::delta1;
using constants::delta2;
using constants::delta3;
using constants::eps_m;
using constants::eps_o3;

namespace {

inline double clamp_unit(double c) {
    return std::min(1.0, std::max(-1.0, c));
}

inline double cos_of_angle(const Mat3& r) {
    return clamp_unit(0.5 * (r.trace() - 1.0));
}

}  // namespace

Mat3 exp_so3(const Vec3& n) {
    const double theta = n.norm();
    if (theta <= eps_m) {
        return Mat3::Identity();
    }
    // Half-angle rearrangement of I + sin(theta) U + (1 - cos(theta)) U^2.
    // With w = cos(theta/2) and (x,y,z) = sin(theta/2) u, the quadratic form
    // below divided by q2 = w^2+x^2+y^2+z^2 is orthogonal for any axis norm,
    // so the rounding of u = n/theta cannot leak into the orthogonality
    // certificate. A direct evaluation loses that: the defect of ||u|| enters
    // R^T R scaled by (1-cos theta)^2, which reaches 4 near theta = pi.
    const Vec3 u = n / theta;
    const double w = std::cos(0.5 * theta);
    const double s2 = std::sin(0.5 * theta);
    const double x = s2 * u.x(), y = s2 * u.y(), z = s2 * u.z();
    const double ww = w * w, xx = x * x, yy = y * y, zz = z * z;
    const double q2 = ww + xx + yy + zz;
    Mat3 r;
    r(0, 0) = (ww + xx - yy - zz) / q2;
    r(0, 1) = 2.0 * (x * y - w * z) / q2;
    r(0, 2) = 2.0 * (x * z + w * y) / q2;
    r(1, 0) = 2.0 * (x * y + w * z) / q2;
    r(1, 1) = (ww - xx + yy - zz) / q2;
    r(1, 2) = 2.0 * (y * z - w * x) / q2;
    r(2, 0) = 2.0 * (x * z - w * y) / q2;
    r(2, 1) = 2.0 * (y * z + w * x) / q2;
    r(2, 2) = (ww - xx - yy + zz) / q2;
    return r;
}

AxisAngle log_so3(const Mat3& r) {
    const double c = cos_of_angle(r);
    if (c >= 1.0 - delta1) {
        return {0.0, Vec3::Zero()};
    }
    // unskew(R - R^T); its Euclidean norm is 2 sin(theta)
    const Vec3 v(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
    if (c >= 1.0 - delta2) {
        // small angle: log(R) = (R - R^T)/2 to working accuracy
        return {0.5 * v.norm(), v.normalized()};
    }
    if (c > -1.0 + delta3) {
        return {std::acos(c), v.normalized()};
    }
    return {M_PI, boundary_axis(r)};
}

Vec3 log_so3_vec(const Mat3& r) {
    const AxisAngle aa = log_so3(r);
    return aa.theta * aa.u;
}

Vec3 boundary_axis(const Mat3& r) {
    if (cos_of_angle(r) > -1.0 + delta3) {
        throw ValidationError("boundary_axis: rotation angle is not near pi");
    }
    Vec3 u(std::sqrt(std::max(0.0, (r(0, 0) + 1.0) / 2.0)),
           std::sqrt(std::max(0.0, (r(1, 1) + 1.0) / 2.0)),
           std::sqrt(std::max(0.0, (r(2, 2) + 1.0) / 2.0)));
    if (r(1, 0) < 0.0) {
        u.y() = -u.y();
    }
    if (r(2, 0) < 0.0 || (r(2, 1) < 0.0 && u.x() <= 4 * eps_m)) {
        u.z() = -u.z();
    }
    return u;
}

double orth_error(const Mat3& r) {
    return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

ProjSo3Detail proj_so3_detail(const Mat3& b) {
    if (!(b.determinant() > 0.0)) {
        throw ValidationError("proj_so3: determinant must be positive");
    }
    const Svd3 svd = svd3(b);
    const Mat3 raw = svd.u * svd.v.transpose();
    const double raw_err = orth_error(raw);
    if (raw_err <= eps_o3) {
        return {raw, raw, raw_err, false};
    }
    const Mat3 refined = 0.5 * raw * (3.0 * Mat3::Identity() - raw.transpose() * raw);
    return {refined, raw, raw_err, true};
}

Mat3 proj_so3(const Mat3& b) {
    return proj_so3_detail(b).r;
}

Vec3 branch_map_so3(const Vec3& n, int k, int l) {
    return branch_map_s2(n, k, l);
}

Vec3 lift_map_so3(const Vec3& prev, const Mat3& r) {
    const double theta0 = prev.norm();
    const AxisAngle aa = log_so3(r);
    double theta = aa.theta;
    Vec3 u = aa.u;

    if (theta0 + theta < M_PI) {
        return theta * u;
    }
    if (theta == 0.0) {
        // R is numerically at an even branch boundary and the previous lift
        // is at least ~pi away from the origin. The principal axis is
        // arbitrary here; the previous axis is the continuity-preserving
        // choice and sends us down the collinear path.
        u = prev / theta0;
    }

    const double s = prev.dot(u);
    if (std::abs(std::abs(s) - theta0) < 8.0 * eps_o3 * theta0) {
        // prev and the principal log are numerically parallel
        const double tbar = s < 0.0 ? -theta : theta;
        if (theta0 - tbar < M_PI) {
            return theta * u;
        }
        long l = static_cast<long>(std::floor((theta0 - tbar) / M_PI));
        if (l % 2 != 0) {
            ++l;
        }
        const double mag = tbar + static_cast<double>(l) * M_PI;
        return tbar >= 0.0 ? Vec3(mag * u) : Vec3(-mag * u);
    }

    const long k = static_cast<long>(std::floor(theta0 / M_PI));
    long l = k;
    const long odd = k % 2;
    Vec3 n = prev;
    if (k != 0) {
        // pull prev back to the principal shell along its own axis
        n = (1.0 - static_cast<double>(k + odd) * M_PI / theta0) * prev;
    }
    if ((theta * u - n).norm() > ((theta - 2.0 * M_PI) * u - n).norm()) {
        // the 2pi-wrapped representative is closer: an odd boundary was crossed
        if (odd != 0) {
            --l;
        } else {
            ++l;
        }
    }
    if (l % 2 != 0) {
        theta -= static_cast<double>(l + 1) * M_PI;
    } else {
        theta += static_cast<double>(l) * M_PI;
    }
    return theta * u;
}

double geodesic_dist_so3(const Mat3& r, const Mat3& s) {
    return std::acos(clamp_unit(0.5 * ((r.transpose() * s).trace() - 1.0)));
}

}  // namespace pga
