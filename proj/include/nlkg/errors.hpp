#pragma once

#include <stdexcept>
#include <string>

namespace nlkg {

/// Two fields were combined that do not live on the same radial grid.
class GridMismatchError : public std::runtime_error {
public:
    explicit GridMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver ran out of iterations; carries the last residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual, int iterations)
        : std::runtime_error(what), last_residual(last_residual), iterations(iterations) {}
    double last_residual;
    int iterations;
};

/// The Petviashvili stabilizer became non-positive (collapsed iterate).
class DegenerateIterateError : public std::runtime_error {
public:
    explicit DegenerateIterateError(const std::string& what) : std::runtime_error(what) {}
};

/// A check was invoked on data that violates its stated hypotheses.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Not enough samples to perform the requested computation.
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nlkg
