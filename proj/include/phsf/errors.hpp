#pragma once

#include <stdexcept>
#include <string>

namespace phsf {

/// A numerical cross-check failed (eigensolver breakdown, residual above
/// tolerance, ...). Distinct from std::invalid_argument so the CLI can map
/// configuration errors and numerical failures to different exit codes.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace phsf
