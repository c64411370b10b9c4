#pragma once

#include <cstdint>
#include <vector>

#include "pga/linalg.hpp"
#include "pga/manifold.hpp"

namespace pga {

enum class GenKind { Geodesic, Winding, Pendulum, RandomWalk, Noisy };

// A seed fully determines the output. Winding and geodesic runs take n steps
// and emit n+1 samples with angles spaced angle*i/n; the other kinds emit
// exactly n samples. duration <= 0 selects the default span pi/omega.
struct GenSpec {
    GenKind kind = GenKind::Winding;
    ComponentTag manifold = ComponentTag::SO3;
    int n = 100;
    Vec3 axis = Vec3(0, 0, 1);
    double angle = M_PI;
    double amplitude = 1.0;
    double omega = 1.0;
    double duration = -1.0;
    double step_scale = 0.1;
    double noise_scale = 1e-6;
    std::uint64_t seed = 0;
};

// splitmix64: a Weyl-counter 64-bit mix generator. The stream is a pure
// function of the seed, so sequences are reproducible across platforms.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform01();   // [0, 1)
    double uniform_sym(); // [-1, 1)
};

std::vector<ProductPoint> generate(const GenSpec& spec);

// Rotations distributed by the Haar measure, built as exponentials of
// axis-angle draws (axis uniform, angle density (1 - cos)/pi).
std::vector<Mat3> haar_rotation(std::uint64_t seed, int count);

// Directors distributed uniformly on the sphere.
std::vector<Vec3> uniform_director(std::uint64_t seed, int count);

}  // namespace pga
