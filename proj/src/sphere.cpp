#include "pga/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "pga/errors.hpp"

namespace pga {

using constants::eps_m;
using constants::tau2;
using constants::tau3;

namespace {

inline double clamp_unit(double c) {
    return std::min(1.0, std::max(-1.0, c));
}

}  // namespace

Vec3 exp_s2(const Vec3& d, const Vec3& v) {
    const double theta = v.norm();
    if (theta <= eps_m) {
        return d;
    }
    return std::cos(theta) * d + (std::sin(theta) / theta) * v;
}

Vec3 log_s2(const Vec3& d, const Vec3& e) {
    const double c = clamp_unit(d.dot(e));
    const Vec3 p = e - c * d;
    const double s = p.norm();
    if (c > -1.0 + constants::delta_s2) {
        // The zero band is 32 eps_m wide: directors carry normality error up
        // to 8 eps_m, so for e = d the rejection can reach ~18 eps_m in the
        // radial direction, and arccos would blow that up to a spurious
        // sqrt(eps)-size output. Genuine tangents below the band are smaller
        // than every accuracy tolerance downstream.
        if (s <= 32 * eps_m) {
            return Vec3::Zero();
        }
        return (std::acos(c) / s) * p;
    }
    if (s == 0.0) {
        // e is exactly opposite d; every unit tangent reaches it at norm pi,
        // so return one representative.
        const Vec3 seed = std::abs(d.x()) < 0.5 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
        return M_PI * d.cross(seed).normalized();
    }
    // Near the antipode the normalization is done first so the direction
    // survives even when s underflows the product.
    return std::acos(c) * (p / s);
}

Vec3 proj_s2(const Vec3& x) {
    const double n = x.norm();
    if (n == 0.0) {
        throw ValidationError("proj_s2: projection of the zero vector is undefined");
    }
    return x / n;
}

Vec3 branch_map_s2(const Vec3& v, int k, int l) {
    const double theta = v.norm();
    const double nearest = std::round(theta / M_PI) * M_PI;
    if (std::abs(theta - nearest) <= 4 * eps_m * std::max(1.0, theta)) {
        throw ValidationError("branch_map: tangent norm lies on a branch boundary");
    }
    const Vec3 u = v / theta;
    if ((l - k) % 2 == 0) {
        return ((l - k) * M_PI + theta) * u;
    }
    return ((l + k + 1) * M_PI - theta) * (-u);
}

LiftStepS2 lift_map_s2(const Vec3& d, const Vec3& prev, int k, const Vec3& e) {
    const double c = clamp_unit(d.dot(e));
    int odd = k % 2;

    // e numerically at +-d: snap to the matching boundary component of A_k.
    const double theta = prev.norm();
    const Vec3 u = theta > 0.0 ? Vec3(prev / theta) : Vec3::Zero();
    if (1.0 - c <= tau3) {
        return {(k + odd) * M_PI * u, k};
    }
    if (1.0 + c <= tau3) {
        if (theta == 0.0) {
            // No direction history, e at the antipode: every unit tangent
            // reaches it at norm pi, so any perpendicular of d will do.
            const Vec3 seed = std::abs(d.x()) < 0.5 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
            return {M_PI * d.cross(seed).normalized(), k};
        }
        return {(k + 1 - odd) * M_PI * u, k};
    }

    int l = k;
    double phi = std::acos(c);
    const Vec3 p = e - c * d;
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
    Vec3 w = sign_k * p.normalized();

    if (u.dot(w) + 1.0 <= tau2) {
        // The geodesic from exp(prev) to e passed through +d or -d; decide
        // between stepping to the next branch, the previous one, or (on A_0,
        // which has no inner boundary) passing through the origin.
        w = -w;
        const Vec3 candidate = ((l + 2 - odd) * M_PI - sign_k * phi) * w;
        if ((candidate - prev).norm() < M_PI && (k > 0 || phi > 1.0)) {
            ++l;
        } else if (l == 0) {
            w = -w;
        } else {
            --l;
        }
        odd = l % 2;
    }

    const double sign_l = (l % 2 == 0) ? 1.0 : -1.0;
    phi = (l + odd) * M_PI + sign_l * phi;
    return {phi * w, l};
}

NorthCoords north_rotation_coords(const Vec3& base, const Vec3& v) {
    if ((base - Vec3(0, 0, -1)).norm() <= 1e-8) {
        throw ValidationError("north_rotation_coords: base is at the south pole");
    }
    const double q = 1.0 / (1.0 + base.z());
    return {v.x() - base.x() * q * v.z(), v.y() - base.y() * q * v.z()};
}

Vec3 north_rotation_inverse(const Vec3& base, double a, double b) {
    if ((base - Vec3(0, 0, -1)).norm() <= 1e-8) {
        throw ValidationError("north_rotation_inverse: base is at the south pole");
    }
    // Transpose of the aligning rotation R(base) applied to (a, b, 0).
    const double q = 1.0 / (1.0 + base.z());
    return Vec3((1.0 - q * base.x() * base.x()) * a - q * base.x() * base.y() * b,
                -q * base.x() * base.y() * a + (1.0 - q * base.y() * base.y()) * b,
                -base.x() * a - base.y() * b);
}

double geodesic_dist_s2(const Vec3& d, const Vec3& e) {
    return std::acos(clamp_unit(d.dot(e)));
}

double normality_error(const Vec3& d) {
    return std::abs(1.0 - d.norm());
}

}  // namespace pga
