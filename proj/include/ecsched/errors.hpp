#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecsched {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line` is 1-based for line-oriented formats,
/// `offset` is a 0-based character offset for single-string inputs.
struct ParseError : Error {
    std::size_t line = 0;
    std::size_t offset = 0;

    ParseError(const std::string& msg, std::size_t line_, std::size_t offset_)
        : Error(msg), line(line_), offset(offset_) {}
};

/// Query graph is not weakly connected.
struct ConnectivityError : Error {
    using Error::Error;
};

/// Invalid numeric argument (division-by-zero guards and the like).
struct DomainError : Error {
    using Error::Error;
};

/// Rate requested for a (server, user) pair that is not associated.
struct AssociationError : Error {
    using Error::Error;
};

/// A feasibility constraint C1..C4 does not hold. `constraint` names it.
struct ConstraintError : Error {
    std::string constraint;

    ConstraintError(std::string constraint_, const std::string& msg)
        : Error(msg), constraint(std::move(constraint_)) {}
};

/// Iterative solver failed to certify the requested gap.
struct SolverError : Error {
    double gap = 0.0;

    SolverError(const std::string& msg, double gap_) : Error(msg), gap(gap_) {}
};

/// Input exceeds a hard size guard.
struct SizeError : Error {
    using Error::Error;
};

/// Scenario file violates the schema. `field` is the offending field path.
struct ScenarioError : Error {
    std::string field;

    ScenarioError(std::string field_, const std::string& msg)
        : Error(msg), field(std::move(field_)) {}
};

/// Filesystem failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace ecsched
