#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lspia {

/// Mismatched shapes: matrix sizes, parameter dimensionality, flag arity.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Structurally unusable input: zero total chord length, a hole covering the
/// whole domain, an all-zero matrix fed to the step-size estimator.
struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised under the strict empty-group policy; carries the offending control
/// indices so callers can report them.
class AssemblyError : public std::runtime_error {
public:
    AssemblyError(const std::string& what, std::vector<long> indices)
        : std::runtime_error(what), empty_indices(std::move(indices)) {}

    std::vector<long> empty_indices;
};

/// Malformed input file contents. `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, long line, const std::string& what);

    long line;
};

/// File could not be opened or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite values showed up mid-iteration, or a decomposition failed.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem exceeds the dense diagnostic limit.
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes "lspia: warning: <message>" to stderr.
void warn(const std::string& message);

}  // namespace lspia
