#pragma once

#include <string>
#include <vector>

#include "pga/manifold.hpp"
#include "pga/pga.hpp"

namespace pga {

struct TrajectoryData {
    ProductLayout layout;
    std::vector<ProductPoint> samples;
    int projection_warnings = 0;
};

// Shortest decimal representation that parses back to the same 64-bit float.
std::string format_double(double x);

// Text formats, one snapshot or tangent per line, components in layout
// order. Directors and rotations that violate their membership certificates
// are replaced by their projections and counted as warnings.
std::string serialize_trajectory(const ProductLayout& layout,
                                 const std::vector<ProductPoint>& samples);
TrajectoryData parse_trajectory(const std::string& text);

std::string serialize_lift(const LiftedTrajectory& lift);
LiftedTrajectory parse_lift(const std::string& text);

std::string serialize_model(const PgaModel& model);
PgaModel parse_model(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pga
