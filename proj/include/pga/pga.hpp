#pragma once

#include <vector>

#include "pga/linalg.hpp"
#include "pga/manifold.hpp"

namespace pga {

// Rank-truncated SVD of a snapshot matrix together with the point and layout
// the tangents refer to. spectrum keeps every computed singular value so
// ratios like sigma_2/sigma_1 stay reportable after the drop-tolerance cut.
struct PgaModel {
    ProductPoint base;
    ProductLayout layout;
    MatX u;
    VecX sigma;
    MatX v;
    VecX spectrum;

    int rank() const { return static_cast<int>(sigma.size()); }
    int samples() const { return static_cast<int>(v.rows()); }
};

struct MeanConfig {
    double alpha = 1.0;
    int max_iterations = 200;
    double tolerance = 1e-12;
};

struct MeanResult {
    ProductPoint mean;
    int iterations = 0;
    double gradient_norm = 0.0;
};

// Columns are the tangent coordinate vectors; drop_first omits the leading
// zero column of a lift based at its own first sample.
MatX build_snapshot_matrix(const LiftedTrajectory& lift, bool drop_first);

// Thin SVD with singular values at or below 64 eps relative to the largest
// treated as zero rank.
PgaModel pga_fit(const MatX& y, const ProductPoint& base, const ProductLayout& layout);

// Best rank-p approximation, the sum of the first p terms sigma_j u_j v_j^T.
MatX truncate(const PgaModel& model, int p);

// Map each column of the rank-p approximation back through the exponential.
std::vector<ProductPoint> reconstruct_trajectory(const PgaModel& model, int p);

// Fixed-step gradient descent for the intrinsic mean. Converged when the
// norm of the mean-of-logs gradient vector drops to the tolerance, checked
// before each step.
MeanResult intrinsic_mean(const std::vector<ProductPoint>& points,
                          const ProductLayout& layout, const MeanConfig& cfg = {});

}  // namespace pga
