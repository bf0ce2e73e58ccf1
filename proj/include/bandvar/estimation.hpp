#pragma once

#include "bandvar/linalg.hpp"
#include "bandvar/model.hpp"
#include "bandvar/parallel.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bandvar {

/// Rows are 0-based throughout: row i regresses series i on the lagged
/// values of series j with |i - j| <= k.

/// Number of regressors in row i: d * #{j : |i - j| <= k, 0 <= j < p}.
std::size_t tau(std::size_t i, std::size_t k, std::size_t d, std::size_t p);

/// Source of one design column.
struct DesignColumn {
    std::size_t lag;     ///< 1-based lag
    std::size_t series;  ///< 0-based series index
};

/**
 * Regression for one row. Responses are y_{i,t} for t = d..n-1; design row t
 * stacks y_{j,t-l} lag-major (l = 1..d), series ascending within a lag.
 */
struct RowDesign {
    std::size_t row = 0;
    std::size_t k = 0;
    std::size_t d = 1;
    DenseMatrix x;
    Vector y;
    std::vector<DesignColumn> columns;
};

/// Smallest series length that leaves more observations than regressors.
std::size_t min_length_for(std::size_t i, std::size_t k, std::size_t d, std::size_t p);

RowDesign build_row_design(const TimeSeries& ts, std::size_t i, std::size_t k, std::size_t d);

struct RowFit {
    Vector beta;
    double rss = 0.0;
};

RowFit fit_row(const RowDesign& design);

struct FitReport {
    BandedVarModel model;
    std::vector<double> rss;
    std::vector<Vector> betas;
    /// RSS_i / (n - d)
    std::vector<double> sigma_hat;
};

/**
 * Fits every row by least squares and assembles A_1..A_d.
 *
 * With `demean`, series means are removed first and stored on the model.
 * Rows are independent; the parallel path is bit-identical to the serial one.
 * Throws SingularRowsError listing every row whose design is singular.
 */
FitReport fit_banded_var(const TimeSeries& ts, std::size_t k, std::size_t d, bool demean = false,
                         Execution exec = Execution::parallel);

/// Scatters per-row coefficient vectors into banded lag matrices.
std::vector<BandedMatrix> assemble_coefficients(const std::vector<Vector>& betas, std::size_t p,
                                                std::size_t k, std::size_t d);

/// Inverse of assemble_coefficients.
std::vector<Vector> extract_betas(const std::vector<BandedMatrix>& coeffs, std::size_t k);

/// Subtracts the per-series sample mean; returns the centred copy and the means.
std::pair<TimeSeries, Vector> demeaned(const TimeSeries& ts);

}  // namespace bandvar
