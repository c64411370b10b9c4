#include "pga/pga.hpp"

#include <cmath>
#include <string>

#include "pga/errors.hpp"
#include "pga/rotation.hpp"
#include "pga/sphere.hpp"

namespace pga {

using constants::eps_m;

MatX build_snapshot_matrix(const LiftedTrajectory& lift, bool drop_first) {
    const int m = lift.layout.tangent_dim();
    const int total = static_cast<int>(lift.tangents.size());
    const int skip = drop_first && total > 0 ? 1 : 0;
    MatX y(m, total - skip);
    for (int j = skip; j < total; ++j) {
        y.col(j - skip) = lift.tangents[static_cast<size_t>(j)];
    }
    return y;
}

PgaModel pga_fit(const MatX& y, const ProductPoint& base, const ProductLayout& layout) {
    if (!y.allFinite()) {
        throw ValidationError("pga_fit: snapshot matrix has non-finite entries");
    }
    PgaModel model;
    model.base = base;
    model.layout = layout;
    if (y.rows() == 0 || y.cols() == 0) {
        model.u = MatX(y.rows(), 0);
        model.sigma = VecX(0);
        model.v = MatX(y.cols(), 0);
        model.spectrum = VecX(0);
        return model;
    }
    const ThinSvd svd = thin_svd(y);
    model.spectrum = svd.sigma;
    const double drop = 64.0 * eps_m * (svd.sigma.size() > 0 ? svd.sigma[0] : 0.0);
    int r = 0;
    while (r < svd.sigma.size() && svd.sigma[r] > drop) {
        ++r;
    }
    model.u = svd.u.leftCols(r);
    model.sigma = svd.sigma.head(r);
    model.v = svd.v.leftCols(r);
    return model;
}

MatX truncate(const PgaModel& model, int p) {
    if (p < 0 || p > model.rank()) {
        throw ValidationError("truncate: rank " + std::to_string(p) +
                              " outside [0, " + std::to_string(model.rank()) + "]");
    }
    if (p == 0) {
        return MatX::Zero(model.u.rows(), model.v.rows());
    }
    return model.u.leftCols(p) * model.sigma.head(p).asDiagonal() *
           model.v.leftCols(p).transpose();
}

std::vector<ProductPoint> reconstruct_trajectory(const PgaModel& model, int p) {
    const MatX yp = truncate(model, p);
    std::vector<ProductPoint> out;
    out.reserve(static_cast<size_t>(yp.cols()));
    for (int j = 0; j < yp.cols(); ++j) {
        out.push_back(reconstruct_point(model.base, yp.col(j), model.layout));
    }
    return out;
}

namespace {

// Log of each component of x at the current iterate, laid out as ambient
// 3-vectors per component; rejects data sitting numerically on the cut locus.
void accumulate_logs(const ProductPoint& mean, const ProductPoint& x,
                     const ProductLayout& layout, std::vector<Vec3>& acc) {
    for (size_t c = 0; c < layout.tags.size(); ++c) {
        switch (layout.tags[c]) {
            case ComponentTag::S2: {
                const Vec3& m = std::get<S2Point>(mean.components[c]).d;
                const Vec3& d = std::get<S2Point>(x.components[c]).d;
                if (M_PI - geodesic_dist_s2(m, d) < 1e-8) {
                    throw ValidationError(
                        "intrinsic_mean: a director lies numerically opposite the iterate");
                }
                acc[c] += log_s2(m, d);
                break;
            }
            case ComponentTag::SO3: {
                const Mat3& m = std::get<SO3Point>(mean.components[c]).r;
                const Mat3& r = std::get<SO3Point>(x.components[c]).r;
                if (M_PI - geodesic_dist_so3(m, r) < 1e-8) {
                    throw ValidationError(
                        "intrinsic_mean: a rotation lies numerically opposite the iterate");
                }
                acc[c] += log_so3_vec(Mat3(m.transpose() * r));
                break;
            }
            case ComponentTag::R3: {
                acc[c] += std::get<R3Point>(x.components[c]).x -
                          std::get<R3Point>(mean.components[c]).x;
                break;
            }
        }
    }
}

}  // namespace

MeanResult intrinsic_mean(const std::vector<ProductPoint>& points,
                          const ProductLayout& layout, const MeanConfig& cfg) {
    if (points.empty()) {
        throw ValidationError("intrinsic_mean: no points");
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha < 2.0)) {
        throw ValidationError("intrinsic_mean: step length must lie in (0, 2)");
    }
    if (!(cfg.tolerance > 0.0)) {
        throw ValidationError("intrinsic_mean: tolerance must be positive");
    }
    for (const ProductPoint& p : points) {
        validate_shape(p, layout);
    }

    const size_t ncomp = layout.tags.size();
    const double n = static_cast<double>(points.size());
    MeanResult result;
    result.mean = points.front();

    for (int iter = 0; iter <= cfg.max_iterations; ++iter) {
        std::vector<Vec3> grad(ncomp, Vec3::Zero());
        for (const ProductPoint& p : points) {
            accumulate_logs(result.mean, p, layout, grad);
        }
        double sq = 0.0;
        for (Vec3& g : grad) {
            g /= n;
            sq += g.squaredNorm();
        }
        result.iterations = iter;
        result.gradient_norm = std::sqrt(sq);
        if (result.gradient_norm <= cfg.tolerance) {
            return result;
        }
        if (iter == cfg.max_iterations) {
            break;
        }
        for (size_t c = 0; c < ncomp; ++c) {
            const Vec3 step = cfg.alpha * grad[c];
            switch (layout.tags[c]) {
                case ComponentTag::S2: {
                    Vec3& m = std::get<S2Point>(result.mean.components[c]).d;
                    m = exp_s2(m, step);
                    break;
                }
                case ComponentTag::SO3: {
                    Mat3& m = std::get<SO3Point>(result.mean.components[c]).r;
                    m = m * exp_so3(step);
                    break;
                }
                case ComponentTag::R3: {
                    std::get<R3Point>(result.mean.components[c]).x += step;
                    break;
                }
            }
        }
    }
    throw NumericalError("intrinsic_mean: no convergence after " +
                         std::to_string(cfg.max_iterations) + " iterations, gradient norm " +
                         std::to_string(result.gradient_norm));
}

}  // namespace pga
