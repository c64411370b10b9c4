#pragma once

#include <variant>
#include <vector>

#include "pga/linalg.hpp"

namespace pga {

enum class ComponentTag { S2, SO3, R3 };

// Tangent coordinate scheme for S2 components: two coordinates in the frame
// that rotates the base director to the north pole, or the ambient 3-vector.
enum class S2Scheme { North2, Ambient3 };

struct S2Point {
    Vec3 d;
};
struct SO3Point {
    Mat3 r;
};
struct R3Point {
    Vec3 x;
};

using ManifoldPoint = std::variant<S2Point, SO3Point, R3Point>;

struct ProductPoint {
    std::vector<ManifoldPoint> components;
};

struct ProductLayout {
    std::vector<ComponentTag> tags;
    S2Scheme scheme = S2Scheme::North2;

    int tangent_dim() const;
    int snapshot_dim() const;
    int component_tangent_dim(int c) const;
};

// Tangent coordinates per sample plus a per-component branch trace. The trace
// records the shell index floor((norm + tol) / pi) of each component tangent,
// with a small tolerance so norms landing within rounding of a boundary from
// below are counted as on it.
struct LiftedTrajectory {
    ProductPoint base;
    ProductLayout layout;
    std::vector<VecX> tangents;
    std::vector<std::vector<int>> branches;
};

// Lift a time-ordered snapshot sequence into the tangent space at the first
// sample, switching logarithm branches so the curve stays continuous.
LiftedTrajectory lift_trajectory(const std::vector<ProductPoint>& samples,
                                 const ProductLayout& layout);

// Same, at an explicitly given base point; the first tangent is then the
// principal lift of sample 0 instead of zero.
LiftedTrajectory lift_trajectory(const std::vector<ProductPoint>& samples,
                                 const ProductLayout& layout,
                                 const ProductPoint& base);

ProductPoint reconstruct_point(const ProductPoint& base, const VecX& tangent,
                               const ProductLayout& layout);

// Geodesic distance maximized over components.
double product_dist(const ProductPoint& a, const ProductPoint& b,
                    const ProductLayout& layout);

int branch_shell(double norm);

// Per component, how often the branch trace increases from one sample to the
// next (the initial state counts as shell 0).
std::vector<int> boundary_crossings(const LiftedTrajectory& lift);

void validate_shape(const ProductPoint& p, const ProductLayout& layout);

}  // namespace pga
