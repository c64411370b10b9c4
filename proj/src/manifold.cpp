#include "pga/manifold.hpp"

#include <cmath>
#include <string>

#include "pga/errors.hpp"
#include "pga/rotation.hpp"
#include "pga/sphere.hpp"

namespace pga {

using constants::tau1;

int ProductLayout::component_tangent_dim(int c) const {
    switch (tags[static_cast<size_t>(c)]) {
        case ComponentTag::S2:
            return scheme == S2Scheme::North2 ? 2 : 3;
        case ComponentTag::SO3:
            return 3;
        default:
            return 3;
    }
}

int ProductLayout::tangent_dim() const {
    int m = 0;
    for (int c = 0; c < static_cast<int>(tags.size()); ++c) {
        m += component_tangent_dim(c);
    }
    return m;
}

int ProductLayout::snapshot_dim() const {
    int m = 0;
    for (ComponentTag tag : tags) {
        m += tag == ComponentTag::SO3 ? 9 : 3;
    }
    return m;
}

void validate_shape(const ProductPoint& p, const ProductLayout& layout) {
    if (p.components.size() != layout.tags.size()) {
        throw ValidationError("point has " + std::to_string(p.components.size()) +
                              " components, layout expects " +
                              std::to_string(layout.tags.size()));
    }
    for (size_t c = 0; c < layout.tags.size(); ++c) {
        const bool ok =
            (layout.tags[c] == ComponentTag::S2 && std::holds_alternative<S2Point>(p.components[c])) ||
            (layout.tags[c] == ComponentTag::SO3 && std::holds_alternative<SO3Point>(p.components[c])) ||
            (layout.tags[c] == ComponentTag::R3 && std::holds_alternative<R3Point>(p.components[c]));
        if (!ok) {
            throw ValidationError("component " + std::to_string(c) +
                                  " does not match the layout tag");
        }
    }
}

double product_dist(const ProductPoint& a, const ProductPoint& b,
                    const ProductLayout& layout) {
    double dist = 0.0;
    for (size_t c = 0; c < layout.tags.size(); ++c) {
        double d = 0.0;
        switch (layout.tags[c]) {
            case ComponentTag::S2:
                d = geodesic_dist_s2(std::get<S2Point>(a.components[c]).d,
                                     std::get<S2Point>(b.components[c]).d);
                break;
            case ComponentTag::SO3:
                d = geodesic_dist_so3(std::get<SO3Point>(a.components[c]).r,
                                      std::get<SO3Point>(b.components[c]).r);
                break;
            case ComponentTag::R3:
                d = (std::get<R3Point>(a.components[c]).x -
                     std::get<R3Point>(b.components[c]).x)
                        .norm();
                break;
        }
        dist = std::max(dist, d);
    }
    return dist;
}

int branch_shell(double norm) {
    return static_cast<int>(std::floor((norm + 1e-9) / M_PI));
}

namespace {

struct ComponentState {
    Vec3 prev = Vec3::Zero();  // running ambient tangent (S2 and SO3)
    int k = 0;                 // annulus index consumed by the S2 lift
};

}  // namespace

LiftedTrajectory lift_trajectory(const std::vector<ProductPoint>& samples,
                                 const ProductLayout& layout,
                                 const ProductPoint& base) {
    if (samples.empty()) {
        throw ValidationError("lift_trajectory: no samples");
    }
    validate_shape(base, layout);
    for (const ProductPoint& s : samples) {
        validate_shape(s, layout);
    }
    if (layout.scheme == S2Scheme::North2) {
        // The north chart has to exist at the base even if every tangent
        // turns out to be zero.
        for (size_t c = 0; c < layout.tags.size(); ++c) {
            if (layout.tags[c] == ComponentTag::S2) {
                north_rotation_coords(std::get<S2Point>(base.components[c]).d,
                                      Vec3::Zero());
            }
        }
    }

    const int ncomp = static_cast<int>(layout.tags.size());
    LiftedTrajectory out;
    out.base = base;
    out.layout = layout;
    out.tangents.reserve(samples.size());
    out.branches.reserve(samples.size());

    std::vector<ComponentState> state(static_cast<size_t>(ncomp));
    const ProductPoint* prev_point = &base;

    for (size_t i = 0; i < samples.size(); ++i) {
        if (product_dist(samples[i], *prev_point, layout) <= tau1) {
            // Numerically identical to the previous snapshot: reuse its lift.
            if (out.tangents.empty()) {
                out.tangents.emplace_back(VecX::Zero(layout.tangent_dim()));
                out.branches.emplace_back(static_cast<size_t>(ncomp), 0);
            } else {
                out.tangents.push_back(out.tangents.back());
                out.branches.push_back(out.branches.back());
            }
            prev_point = &samples[i];
            continue;
        }

        VecX tangent(layout.tangent_dim());
        std::vector<int> trace(static_cast<size_t>(ncomp), 0);
        int offset = 0;
        for (int c = 0; c < ncomp; ++c) {
            const auto cc = static_cast<size_t>(c);
            switch (layout.tags[cc]) {
                case ComponentTag::S2: {
                    const Vec3& d0 = std::get<S2Point>(base.components[cc]).d;
                    const Vec3& e = std::get<S2Point>(samples[i].components[cc]).d;
                    if (geodesic_dist_s2(std::get<S2Point>(prev_point->components[cc]).d, e) >= M_PI) {
                        throw ValidationError(
                            "lift_trajectory: consecutive directors at geodesic distance >= pi "
                            "(sample " + std::to_string(i) + ", component " + std::to_string(c) + ")");
                    }
                    const LiftStepS2 step = lift_map_s2(d0, state[cc].prev, state[cc].k, e);
                    state[cc].prev = step.v;
                    state[cc].k = step.branch;
                    if (layout.scheme == S2Scheme::North2) {
                        const NorthCoords nc = north_rotation_coords(d0, step.v);
                        tangent[offset] = nc.a;
                        tangent[offset + 1] = nc.b;
                    } else {
                        tangent.segment<3>(offset) = step.v;
                    }
                    trace[cc] = branch_shell(step.v.norm());
                    break;
                }
                case ComponentTag::SO3: {
                    const Mat3& r0 = std::get<SO3Point>(base.components[cc]).r;
                    const Mat3& r = std::get<SO3Point>(samples[i].components[cc]).r;
                    if (geodesic_dist_so3(std::get<SO3Point>(prev_point->components[cc]).r, r) >= M_PI) {
                        throw ValidationError(
                            "lift_trajectory: consecutive rotations at geodesic distance >= pi "
                            "(sample " + std::to_string(i) + ", component " + std::to_string(c) + ")");
                    }
                    const Vec3 v = lift_map_so3(state[cc].prev, Mat3(r0.transpose() * r));
                    state[cc].prev = v;
                    tangent.segment<3>(offset) = v;
                    trace[cc] = branch_shell(v.norm());
                    break;
                }
                case ComponentTag::R3: {
                    const Vec3& x0 = std::get<R3Point>(base.components[cc]).x;
                    const Vec3& x = std::get<R3Point>(samples[i].components[cc]).x;
                    tangent.segment<3>(offset) = x - x0;
                    break;
                }
            }
            offset += layout.component_tangent_dim(c);
        }
        out.tangents.push_back(std::move(tangent));
        out.branches.push_back(std::move(trace));
        prev_point = &samples[i];
    }
    return out;
}

LiftedTrajectory lift_trajectory(const std::vector<ProductPoint>& samples,
                                 const ProductLayout& layout) {
    if (samples.empty()) {
        throw ValidationError("lift_trajectory: no samples");
    }
    return lift_trajectory(samples, layout, samples.front());
}

ProductPoint reconstruct_point(const ProductPoint& base, const VecX& tangent,
                               const ProductLayout& layout) {
    validate_shape(base, layout);
    if (tangent.size() != layout.tangent_dim()) {
        throw ValidationError("reconstruct_point: tangent has dimension " +
                              std::to_string(tangent.size()) + ", layout expects " +
                              std::to_string(layout.tangent_dim()));
    }
    ProductPoint out;
    out.components.reserve(layout.tags.size());
    int offset = 0;
    for (int c = 0; c < static_cast<int>(layout.tags.size()); ++c) {
        const auto cc = static_cast<size_t>(c);
        switch (layout.tags[cc]) {
            case ComponentTag::S2: {
                const Vec3& d0 = std::get<S2Point>(base.components[cc]).d;
                Vec3 v;
                if (layout.scheme == S2Scheme::North2) {
                    v = north_rotation_inverse(d0, tangent[offset], tangent[offset + 1]);
                } else {
                    v = tangent.segment<3>(offset);
                }
                out.components.emplace_back(S2Point{exp_s2(d0, v)});
                break;
            }
            case ComponentTag::SO3: {
                const Mat3& r0 = std::get<SO3Point>(base.components[cc]).r;
                const Vec3 n = tangent.segment<3>(offset);
                out.components.emplace_back(SO3Point{Mat3(r0 * exp_so3(n))});
                break;
            }
            case ComponentTag::R3: {
                const Vec3& x0 = std::get<R3Point>(base.components[cc]).x;
                out.components.emplace_back(R3Point{Vec3(x0 + tangent.segment<3>(offset))});
                break;
            }
        }
        offset += layout.component_tangent_dim(c);
    }
    return out;
}

std::vector<int> boundary_crossings(const LiftedTrajectory& lift) {
    std::vector<int> counts(lift.layout.tags.size(), 0);
    std::vector<int> prev(lift.layout.tags.size(), 0);
    for (const std::vector<int>& row : lift.branches) {
        for (size_t c = 0; c < counts.size(); ++c) {
            if (row[c] > prev[c]) {
                ++counts[c];
            }
            prev[c] = row[c];
        }
    }
    return counts;
}

}  // namespace pga
