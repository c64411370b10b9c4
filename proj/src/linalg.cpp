#include "pga/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "pga/errors.hpp"

namespace pga {

Mat3 skew(const Vec3& n) {
    Mat3 m;
    m << 0.0, -n.z(), n.y(),
         n.z(), 0.0, -n.x(),
        -n.y(), n.x(), 0.0;
    return m;
}

Vec3 unskew(const Mat3& n) {
    const double sym = (n + n.transpose()).cwiseAbs().maxCoeff();
    if (sym > 8 * constants::eps_m) {
        throw ValidationError("unskew: matrix is not antisymmetric");
    }
    return Vec3(n(2, 1), n(0, 2), n(1, 0));
}

double so3_inner(const Mat3& v, const Mat3& w) {
    return 0.5 * (v.transpose() * w).trace();
}

double so3_norm(const Mat3& v) {
    return std::sqrt(std::max(0.0, so3_inner(v, v)));
}

namespace {

// One Newton step for M^T M = I. Jacobi factors carry orthogonality error up
// to ~13 eps_m in the tail, which the downstream polar projection would
// inherit; one step brings each factor to a few eps_m while moving its
// entries by O(eps), so the reconstruction B = U sigma V^T is unaffected.
Mat3 tighten_orthogonality(const Mat3& m) {
    return 0.5 * m * (3.0 * Mat3::Identity() - m.transpose() * m);
}

}  // namespace

Svd3 svd3(const Mat3& b) {
    Eigen::JacobiSVD<Mat3> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return Svd3{tighten_orthogonality(svd.matrixU()), svd.singularValues(),
                tighten_orthogonality(svd.matrixV())};
}

ThinSvd thin_svd(const MatX& y) {
    Eigen::BDCSVD<MatX> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return ThinSvd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace pga
