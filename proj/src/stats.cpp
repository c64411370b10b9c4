#include "pga/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pga/errors.hpp"
#include "pga/rotation.hpp"
#include "pga/sphere.hpp"

namespace pga {

using constants::eps_m;

long BinHistogram::total() const {
    long t = 0;
    for (const Bin& b : bins) {
        t += b.count;
    }
    return t;
}

namespace {

double component_angle_from_base(const ManifoldPoint& base, const ManifoldPoint& x) {
    if (std::holds_alternative<S2Point>(x)) {
        return geodesic_dist_s2(std::get<S2Point>(base).d, std::get<S2Point>(x).d);
    }
    if (std::holds_alternative<SO3Point>(x)) {
        return geodesic_dist_so3(std::get<SO3Point>(base).r, std::get<SO3Point>(x).r);
    }
    return 0.0;
}

double component_max_norm_diff(const ManifoldPoint& a, const ManifoldPoint& b) {
    if (std::holds_alternative<S2Point>(a)) {
        return (std::get<S2Point>(a).d - std::get<S2Point>(b).d).cwiseAbs().maxCoeff();
    }
    if (std::holds_alternative<SO3Point>(a)) {
        return (std::get<SO3Point>(a).r - std::get<SO3Point>(b).r).cwiseAbs().maxCoeff();
    }
    return (std::get<R3Point>(a).x - std::get<R3Point>(b).x).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<ErrorRecord> lift_project_error(const std::vector<ProductPoint>& points,
                                            const LiftedTrajectory& lift) {
    if (points.size() != lift.tangents.size()) {
        throw ValidationError("lift_project_error: " + std::to_string(points.size()) +
                              " points against " + std::to_string(lift.tangents.size()) +
                              " tangents");
    }
    std::vector<ErrorRecord> records;
    records.reserve(points.size() * lift.layout.tags.size());
    for (size_t i = 0; i < points.size(); ++i) {
        const ProductPoint recon =
            reconstruct_point(lift.base, lift.tangents[i], lift.layout);
        for (size_t c = 0; c < lift.layout.tags.size(); ++c) {
            ErrorRecord rec;
            rec.sample = static_cast<int>(i);
            rec.theta = component_angle_from_base(lift.base.components[c],
                                                  points[i].components[c]);
            rec.error = component_max_norm_diff(recon.components[c],
                                                points[i].components[c]);
            records.push_back(rec);
        }
    }
    return records;
}

std::vector<ErrorRecord> orth_normality_errors(const std::vector<ProductPoint>& points) {
    std::vector<ErrorRecord> records;
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t c = 0; c < points[i].components.size(); ++c) {
            const ManifoldPoint& mp = points[i].components[c];
            ErrorRecord rec;
            rec.sample = static_cast<int>(i);
            if (std::holds_alternative<SO3Point>(mp)) {
                const Mat3& r = std::get<SO3Point>(mp).r;
                rec.error = orth_error(r);
                rec.theta = geodesic_dist_so3(Mat3::Identity(), r);
            } else if (std::holds_alternative<S2Point>(mp)) {
                const Vec3& d = std::get<S2Point>(mp).d;
                rec.error = normality_error(d);
                rec.theta = geodesic_dist_s2(Vec3(0, 0, 1), d);
            }
            records.push_back(rec);
        }
    }
    return records;
}

BinHistogram bin_counts(const std::vector<ErrorRecord>& records) {
    constexpr int kDyadic = 42;  // j = 0..41
    BinHistogram h;
    h.bins.resize(static_cast<size_t>(kDyadic) + 3);
    h.bins[0] = {0.0, 0.0, 0};
    h.bins[1] = {0.0, 0.5 * eps_m, 0};
    for (int j = 0; j < kDyadic; ++j) {
        h.bins[static_cast<size_t>(j) + 2] = {std::ldexp(eps_m, j - 1), std::ldexp(eps_m, j), 0};
    }
    h.bins.back() = {std::ldexp(eps_m, kDyadic - 1),
                     std::numeric_limits<double>::infinity(), 0};
    for (const ErrorRecord& rec : records) {
        const double e = rec.error;
        if (e == 0.0) {
            ++h.bins[0].count;
        } else if (e <= 0.5 * eps_m) {
            ++h.bins[1].count;
        } else {
            int j = 0;
            while (j < kDyadic && e > std::ldexp(eps_m, j)) {
                ++j;
            }
            ++h.bins[static_cast<size_t>(j < kDyadic ? j + 2 : kDyadic + 2)].count;
        }
    }
    return h;
}

ErrorSummary summarize(const std::vector<ErrorRecord>& records) {
    ErrorSummary s;
    s.total = static_cast<long>(records.size());
    const double threshold = std::ldexp(eps_m, 12);
    for (const ErrorRecord& rec : records) {
        s.max_error = std::max(s.max_error, rec.error);
        if (rec.error > threshold) {
            ++s.large_count;
        }
    }
    s.large_fraction = s.total > 0 ? static_cast<double>(s.large_count) /
                                         static_cast<double>(s.total)
                                   : 0.0;
    return s;
}

}  // namespace pga
