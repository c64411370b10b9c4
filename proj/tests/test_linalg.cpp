#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pga/errors.hpp"
#include "pga/linalg.hpp"
#include "pga/trajgen.hpp"

using namespace pga;
using constants::eps_m;
using constants::eps_o3;

namespace {

Vec3 random_vec(SplitMix64& rng, double scale = 1.0) {
    return scale * Vec3(rng.uniform_sym(), rng.uniform_sym(), rng.uniform_sym());
}

}  // namespace

TEST_CASE("machine constants") {
    CHECK(eps_m == 0x1p-52);
    CHECK(eps_o3 == 0x1p-49);
    CHECK(eps_o3 == 8 * eps_m);
    CHECK(constants::delta_s2 == 0x1p-21);
    CHECK(constants::delta1 == 0x1p-50);
    CHECK(constants::delta2 == 0x1p-42);
    CHECK(constants::delta3 == 0x1p-28);
    CHECK(constants::tau1 == 8 * eps_m);
    CHECK(constants::tau2 == eps_m);
    CHECK(constants::tau3 == 4 * eps_m);
}

TEST_CASE("skew of zero and of e3") {
    CHECK(skew(Vec3::Zero()).isZero(0.0));

    Mat3 expected;
    expected << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    CHECK((skew(Vec3(0, 0, 1)) - expected).isZero(0.0));
}

TEST_CASE("skew acts as the cross product") {
    const Vec3 n(1, 2, 3);
    const Vec3 v(1, 0, 0);
    CHECK((skew(n) * v - Vec3(0, 3, -2)).isZero(0.0));

    SplitMix64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec3 a = random_vec(rng, 5.0);
        const Vec3 b = random_vec(rng, 5.0);
        CHECK((skew(a) * b - a.cross(b)).cwiseAbs().maxCoeff() <=
              8 * eps_m * a.norm() * b.norm());
    }
}

TEST_CASE("unskew inverts skew exactly") {
    CHECK(unskew(Mat3::Zero()).isZero(0.0));

    Mat3 m;
    m << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    CHECK(unskew(m) == Vec3(0, 0, 1));

    SplitMix64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const Vec3 v = random_vec(rng, 10.0);
        CHECK(unskew(skew(v)) == v);
    }
}

TEST_CASE("unskew rejects non-antisymmetric input") {
    CHECK_THROWS_AS(unskew(Mat3::Identity()), ValidationError);
    Mat3 m = skew(Vec3(1, 2, 3));
    m(0, 1) += 1e-12;
    CHECK_THROWS_AS(unskew(m), ValidationError);
}

TEST_CASE("scaled Frobenius product realizes the skew isometry") {
    CHECK(so3_inner(skew(Vec3(0, 0, 1)), skew(Vec3(0, 0, 1))) == 1.0);
    CHECK(so3_norm(skew(Vec3(3, 4, 0))) == 5.0);

    SplitMix64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const Vec3 u = random_vec(rng, 3.0);
        const Vec3 w = random_vec(rng, 3.0);
        CHECK(std::abs(so3_inner(skew(u), skew(w)) - u.dot(w)) <=
              4 * eps_m * u.norm() * w.norm());
    }
}

TEST_CASE("svd3 on identity and a diagonal matrix") {
    const Svd3 id = svd3(Mat3::Identity());
    CHECK((id.sigma - Vec3(1, 1, 1)).cwiseAbs().maxCoeff() <= 4 * eps_m);

    Mat3 d = Vec3(3, 2, 1).asDiagonal();
    const Svd3 s = svd3(d);
    CHECK((s.sigma - Vec3(3, 2, 1)).cwiseAbs().maxCoeff() <= 16 * eps_m);
}

TEST_CASE("svd3 reconstruction and factor orthogonality") {
    SplitMix64 rng(14);
    for (int i = 0; i < 100; ++i) {
        Mat3 b;
        for (int a = 0; a < 3; ++a) {
            for (int c = 0; c < 3; ++c) {
                b(a, c) = rng.uniform_sym();
            }
        }
        const double scale = b.cwiseAbs().maxCoeff();
        const Svd3 s = svd3(b);
        const Mat3 recon = s.u * s.sigma.asDiagonal() * s.v.transpose();
        CHECK((recon - b).cwiseAbs().maxCoeff() <= 1e-13 * scale);
        CHECK((s.u.transpose() * s.u - Mat3::Identity()).cwiseAbs().maxCoeff() <=
              64 * eps_m * std::max(1.0, scale));
        CHECK((s.v.transpose() * s.v - Mat3::Identity()).cwiseAbs().maxCoeff() <=
              64 * eps_m * std::max(1.0, scale));
        CHECK(s.sigma[0] >= s.sigma[1]);
        CHECK(s.sigma[1] >= s.sigma[2]);
        CHECK(s.sigma[2] >= 0.0);
    }
}

TEST_CASE("svd3 of a rotation has unit singular values") {
    const std::vector<Mat3> rots = haar_rotation(15, 200);
    for (const Mat3& r : rots) {
        const Svd3 s = svd3(r);
        CHECK((s.sigma - Vec3(1, 1, 1)).cwiseAbs().maxCoeff() <= 16 * eps_m);
    }
}

TEST_CASE("thin_svd basics") {
    MatX y(2, 2);
    y << 1, 0, 0, 0;
    const ThinSvd s = thin_svd(y);
    CHECK(s.sigma[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.sigma[1] <= 1e-14);
}

TEST_CASE("thin_svd of a rank-1 outer product") {
    SplitMix64 rng(16);
    VecX a(7);
    VecX b(9);
    for (int i = 0; i < a.size(); ++i) a[i] = rng.uniform_sym();
    for (int i = 0; i < b.size(); ++i) b[i] = rng.uniform_sym();
    const MatX y = a * b.transpose();
    const ThinSvd s = thin_svd(y);
    CHECK(s.sigma[1] <= 1e-13 * s.sigma[0]);
}

TEST_CASE("thin_svd reconstruction, orthonormality, transpose spectrum") {
    SplitMix64 rng(17);
    MatX y(50, 200);
    for (int i = 0; i < y.rows(); ++i) {
        for (int j = 0; j < y.cols(); ++j) {
            y(i, j) = rng.uniform_sym();
        }
    }
    const ThinSvd s = thin_svd(y);
    CHECK((y - s.u * s.sigma.asDiagonal() * s.v.transpose()).norm() <= 1e-12 * y.norm());
    const int r = static_cast<int>(s.sigma.size());
    CHECK((s.u.transpose() * s.u - MatX::Identity(r, r)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((s.v.transpose() * s.v - MatX::Identity(r, r)).cwiseAbs().maxCoeff() <= 1e-12);
    for (int j = 1; j < r; ++j) {
        CHECK(s.sigma[j] <= s.sigma[j - 1]);
    }
    CHECK(s.sigma[r - 1] >= 0.0);

    const ThinSvd st = thin_svd(MatX(y.transpose()));
    CHECK((s.sigma - st.sigma).cwiseAbs().maxCoeff() <= 1e-12 * s.sigma[0]);
}
