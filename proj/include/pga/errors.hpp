#pragma once

#include <stdexcept>
#include <string>

namespace pga {

// Input rejected by a documented precondition or file-format rule.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that could not meet its numerical contract (non-convergence etc).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pga
