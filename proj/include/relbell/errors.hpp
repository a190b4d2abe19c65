#pragma once

#include <stdexcept>
#include <string>

namespace relbell {

/// Scenario text could not be parsed or validated. Messages carry the
/// offending key and, where available, the line number.
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was applied to a state or geometry it does not support
/// (e.g. a collinear transform on non-collinear grids).
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A run was refused because the discretization cannot support it
/// (clipped packet support, non-converged grid diagnostic).
class convergence_error : public std::runtime_error {
  public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal cross-check failed (boost factorization residual,
/// closed-form vs matrix-oracle disagreement). Indicates a numerical or
/// logic defect, not a user error.
class consistency_error : public std::runtime_error {
  public:
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace relbell
