#include "bandvar/errors.hpp"

#include <sstream>

namespace bandvar {

namespace {

std::string singular_message(std::size_t column, double pivot, double largest) {
    std::ostringstream os;
    os << "singular design: column " << column << " has pivot " << pivot
       << " against largest pivot " << largest;
    return os.str();
}

std::string rows_message(const std::vector<std::size_t>& rows) {
    std::ostringstream os;
    os << "singular design in row(s):";
    for (auto r : rows) os << ' ' << r;
    return os.str();
}

}  // namespace

SingularDesignError::SingularDesignError(std::size_t column, double pivot, double largest)
    : NumericalError(singular_message(column, pivot, largest)), column_(column), pivot_(pivot) {}

SingularRowsError::SingularRowsError(std::vector<std::size_t> rows)
    : NumericalError(rows_message(rows)), rows_(std::move(rows)) {}

ConvergenceError::ConvergenceError(const std::string& what, double last_estimate, double gap)
    : NumericalError(what), last_estimate_(last_estimate), gap_(gap) {}

InsufficientDataError::InsufficientDataError(const std::string& what, std::size_t required_n)
    : std::invalid_argument(what + " (need n >= " + std::to_string(required_n) + ")"),
      required_n_(required_n) {}

}  // namespace bandvar
