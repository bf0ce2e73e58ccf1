#pragma once

#include "bandvar/linalg.hpp"
#include "bandvar/model.hpp"
#include "bandvar/parallel.hpp"
#include "bandvar/rng.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace bandvar {

/// (1/n) sum_{t < n-j} (y_t - ybar)(y_{t+j} - ybar)^T, divisor n for every lag.
DenseMatrix sample_autocov(const TimeSeries& ts, std::size_t lag);

/// Keeps entries with |i - j| <= r.
DenseMatrix band(const DenseMatrix& h, std::size_t r);

/// Hard thresholding: keeps entries with |h_ij| > t.
DenseMatrix threshold(const DenseMatrix& h, double t);

/// round(c * log(n / log p)), floored at 0.
std::size_t default_band_width(std::size_t n, std::size_t p, double c);

/// Candidate banding parameters {0, ..., min(p-1, 2 * default_band_width(n, p, 1) + 5)}.
std::vector<std::size_t> default_band_grid(std::size_t n, std::size_t p);

/// `count` evenly spaced thresholds from 0 to the largest |entry| of h.
std::vector<double> default_threshold_grid(const DenseMatrix& h, std::size_t count = 50);

/// Draws one bootstrap weight; must have unit mean and unit variance.
using WeightSampler = std::function<double(Rng&)>;

WeightSampler exponential_weights();
/// u_t == 1 for every t; reduces each replicate to the sample estimate.
WeightSampler unit_weights();

enum class Regularizer { band, threshold };

struct BootstrapRisk {
    Regularizer method = Regularizer::band;
    std::vector<double> grid;
    std::vector<double> risk;
    std::size_t replicates = 0;
    std::size_t best_index = 0;

    double selected() const { return grid.at(best_index); }
};

struct BootstrapOptions {
    std::size_t replicates = 100;
    WeightSampler weights = exponential_weights();
    Execution exec = Execution::parallel;
};

/**
 * Wild-bootstrap risk (1/q) sum_k || B_r(S*_k) - S_j ||_1 for every r in the
 * grid, with S*_k = (1/n) sum_t u_t (y_t - ybar)(y_{t+j} - ybar)^T. Replicate k
 * draws its weights from rng.split(k), so the curve does not depend on the
 * thread count. The minimiser (smallest r on ties) is reported.
 */
BootstrapRisk bootstrap_select_band(const TimeSeries& ts, std::size_t lag, const std::vector<std::size_t>& grid,
                                    const Rng& rng, const BootstrapOptions& opts = {});

/// Same procedure with B_r replaced by hard thresholding at t.
BootstrapRisk bootstrap_select_threshold(const TimeSeries& ts, std::size_t lag, const std::vector<double>& grid,
                                         const Rng& rng, const BootstrapOptions& opts = {});

struct AutocovEstimate {
    std::size_t lag = 0;
    DenseMatrix matrix;
    std::string method;  ///< "sample", "banded" or "thresholded"
    double tuning = 0.0;
    std::string tuning_source;  ///< "none", "fixed" or "bootstrap"
};

}  // namespace bandvar
