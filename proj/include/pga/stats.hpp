#pragma once

#include <vector>

#include "pga/linalg.hpp"
#include "pga/manifold.hpp"

namespace pga {

struct ErrorRecord {
    int sample = 0;
    double theta = 0.0;  // angle of the component, in [0, pi]
    double error = 0.0;  // max-norm error value
};

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;
};

// Dyadic error histogram: an exact-zero bin, the bin (0, eps/2], one bin
// (2^{j-1} eps, 2^j eps] for j = 0..41, and an overflow bin above 2^41 eps.
struct BinHistogram {
    std::vector<Bin> bins;
    long total() const;
};

struct ErrorSummary {
    double max_error = 0.0;
    long large_count = 0;     // errors above 2^12 eps
    double large_fraction = 0.0;
    long total = 0;
};

// Per sample and component: max-norm distance between the reconstruction of
// the lift and the original snapshot, tagged with the component's geodesic
// angle from the base.
std::vector<ErrorRecord> lift_project_error(const std::vector<ProductPoint>& points,
                                            const LiftedTrajectory& lift);

// Per sample and component: orthogonality error for rotations, normality
// error for directors, zero for Euclidean components. The angle is measured
// against the identity rotation and the north pole respectively.
std::vector<ErrorRecord> orth_normality_errors(const std::vector<ProductPoint>& points);

BinHistogram bin_counts(const std::vector<ErrorRecord>& records);

ErrorSummary summarize(const std::vector<ErrorRecord>& records);

}  // namespace pga
