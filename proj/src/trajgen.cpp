#include "pga/trajgen.hpp"

#include <cmath>
#include <string>

#include "pga/errors.hpp"
#include "pga/rotation.hpp"
#include "pga/sphere.hpp"

namespace pga {

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform_sym() {
    return 2.0 * uniform01() - 1.0;
}

namespace {

Vec3 unit_perp(const Vec3& u) {
    const Vec3 seed = std::abs(u.x()) < 0.5 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    return u.cross(seed).normalized();
}

// Marsaglia rejection sampling of the unit disc.
void disc_point(SplitMix64& rng, double& x, double& y, double& s) {
    do {
        x = rng.uniform_sym();
        y = rng.uniform_sym();
        s = x * x + y * y;
    } while (s >= 1.0 || s == 0.0);
}

Vec3 sphere_point(SplitMix64& rng) {
    double x, y, s;
    disc_point(rng, x, y, s);
    const double f = 2.0 * std::sqrt(1.0 - s);
    return Vec3(x * f, y * f, 1.0 - 2.0 * s).normalized();
}

// Axis-angle Haar sampling: axis uniform on the sphere, angle on [0, pi]
// with density (1 - cos(theta))/pi drawn by rejection. Routing through the
// exponential keeps the orthogonality of the output within its budget.
Mat3 haar_one(SplitMix64& rng) {
    double theta;
    do {
        theta = M_PI * rng.uniform01();
    } while (rng.uniform01() >= 0.5 * (1.0 - std::cos(theta)));
    return exp_so3(theta * sphere_point(rng));
}

// Polar method: one standard normal per call, spares dropped.
double gaussian(SplitMix64& rng) {
    double x, y, s;
    disc_point(rng, x, y, s);
    return x * std::sqrt(-2.0 * std::log(s) / s);
}

Vec3 gaussian3(SplitMix64& rng) {
    return Vec3(gaussian(rng), gaussian(rng), gaussian(rng));
}

void validate(const GenSpec& spec) {
    if (spec.n < 1) {
        throw ValidationError("generate: sample count must be at least 1");
    }
    if (spec.axis.norm() == 0.0) {
        throw ValidationError("generate: axis must be nonzero");
    }
    if (!std::isfinite(spec.angle) || !std::isfinite(spec.amplitude) ||
        !std::isfinite(spec.omega) || !std::isfinite(spec.step_scale) ||
        !std::isfinite(spec.noise_scale)) {
        throw ValidationError("generate: parameters must be finite");
    }
    if ((spec.kind == GenKind::Pendulum) && spec.omega == 0.0 && spec.duration <= 0.0) {
        throw ValidationError("generate: default pendulum duration needs omega != 0");
    }
}

ManifoldPoint angle_sample(ComponentTag tag, const Vec3& u, const Vec3& d0, double theta) {
    switch (tag) {
        case ComponentTag::SO3:
            return SO3Point{exp_so3(theta * u)};
        case ComponentTag::S2:
            return S2Point{exp_so3(theta * u) * d0};
        default:
            return R3Point{Vec3(theta * u)};
    }
}

}  // namespace

std::vector<ProductPoint> generate(const GenSpec& spec) {
    validate(spec);
    const Vec3 u = spec.axis.normalized();
    const Vec3 d0 = unit_perp(u);
    SplitMix64 rng(spec.seed);

    std::vector<ProductPoint> out;
    switch (spec.kind) {
        case GenKind::Geodesic:
        case GenKind::Winding: {
            out.reserve(static_cast<size_t>(spec.n) + 1);
            for (int i = 0; i <= spec.n; ++i) {
                const double theta = spec.angle * (static_cast<double>(i) / spec.n);
                out.push_back({{angle_sample(spec.manifold, u, d0, theta)}});
            }
            break;
        }
        case GenKind::Pendulum: {
            const double span = spec.duration > 0.0 ? spec.duration : M_PI / spec.omega;
            out.reserve(static_cast<size_t>(spec.n));
            for (int i = 0; i < spec.n; ++i) {
                const double t = spec.n > 1 ? span * i / (spec.n - 1) : 0.0;
                const double theta = spec.amplitude * std::cos(spec.omega * t);
                out.push_back({{angle_sample(spec.manifold, u, d0, theta)}});
            }
            break;
        }
        case GenKind::RandomWalk: {
            out.reserve(static_cast<size_t>(spec.n));
            switch (spec.manifold) {
                case ComponentTag::SO3: {
                    Mat3 r = Mat3::Identity();
                    out.push_back({{SO3Point{r}}});
                    for (int i = 1; i < spec.n; ++i) {
                        r = r * exp_so3(spec.step_scale * gaussian3(rng));
                        // One Newton polish per step; without it the rounding
                        // of repeated products drifts past the certificate.
                        r = 0.5 * r * (3.0 * Mat3::Identity() - r.transpose() * r);
                        out.push_back({{SO3Point{r}}});
                    }
                    break;
                }
                case ComponentTag::S2: {
                    Vec3 d = Vec3(0, 0, 1);
                    out.push_back({{S2Point{d}}});
                    for (int i = 1; i < spec.n; ++i) {
                        const Vec3 g = gaussian3(rng);
                        const Vec3 v = spec.step_scale * (g - g.dot(d) * d);
                        d = exp_s2(d, v).normalized();
                        out.push_back({{S2Point{d}}});
                    }
                    break;
                }
                default: {
                    Vec3 x = Vec3::Zero();
                    out.push_back({{R3Point{x}}});
                    for (int i = 1; i < spec.n; ++i) {
                        x += spec.step_scale * gaussian3(rng);
                        out.push_back({{R3Point{x}}});
                    }
                    break;
                }
            }
            break;
        }
        case GenKind::Noisy: {
            GenSpec clean = spec;
            clean.kind = GenKind::Winding;
            out = generate(clean);
            for (ProductPoint& p : out) {
                ManifoldPoint& mp = p.components[0];
                if (std::holds_alternative<SO3Point>(mp)) {
                    Mat3& r = std::get<SO3Point>(mp).r;
                    for (int a = 0; a < 3; ++a) {
                        for (int b = 0; b < 3; ++b) {
                            r(a, b) += spec.noise_scale * rng.uniform_sym();
                        }
                    }
                } else if (std::holds_alternative<S2Point>(mp)) {
                    Vec3& d = std::get<S2Point>(mp).d;
                    for (int a = 0; a < 3; ++a) {
                        d[a] += spec.noise_scale * rng.uniform_sym();
                    }
                } else {
                    Vec3& x = std::get<R3Point>(mp).x;
                    for (int a = 0; a < 3; ++a) {
                        x[a] += spec.noise_scale * rng.uniform_sym();
                    }
                }
            }
            break;
        }
    }
    return out;
}

std::vector<Mat3> haar_rotation(std::uint64_t seed, int count) {
    if (count < 1) {
        throw ValidationError("haar_rotation: count must be at least 1");
    }
    SplitMix64 rng(seed);
    std::vector<Mat3> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(haar_one(rng));
    }
    return out;
}

std::vector<Vec3> uniform_director(std::uint64_t seed, int count) {
    if (count < 1) {
        throw ValidationError("uniform_director: count must be at least 1");
    }
    SplitMix64 rng(seed);
    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(sphere_point(rng));
    }
    return out;
}

}  // namespace pga
