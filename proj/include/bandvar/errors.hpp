#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bandvar {

/// Numerical failures (singular designs, solver non-convergence) derive from
/// this so callers can separate them from bad input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularDesignError : public NumericalError {
public:
    SingularDesignError(std::size_t column, double pivot, double largest);

    std::size_t column() const noexcept { return column_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t column_;
    double pivot_;
};

/// Raised by the row-wise fitter when one or more row regressions are singular.
class SingularRowsError : public NumericalError {
public:
    explicit SingularRowsError(std::vector<std::size_t> rows);

    const std::vector<std::size_t>& rows() const noexcept { return rows_; }

private:
    std::vector<std::size_t> rows_;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double last_estimate, double gap);

    double last_estimate() const noexcept { return last_estimate_; }
    double gap() const noexcept { return gap_; }

private:
    double last_estimate_;
    double gap_;
};

class NonStationaryError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Series too short for the requested design.
class InsufficientDataError : public std::invalid_argument {
public:
    InsufficientDataError(const std::string& what, std::size_t required_n);

    std::size_t required_n() const noexcept { return required_n_; }

private:
    std::size_t required_n_;
};

}  // namespace bandvar
