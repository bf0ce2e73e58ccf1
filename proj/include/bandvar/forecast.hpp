#pragma once

#include "bandvar/linalg.hpp"
#include "bandvar/model.hpp"
#include "bandvar/selection.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bandvar {

/// Iterated plug-in forecasts for steps 1..h after the last column of
/// `history`; returns p x h. A stored model mean is removed from the history
/// and added back to the predictions.
DenseMatrix predict(const BandedVarModel& model, const DenseMatrix& history, std::size_t h);
inline DenseMatrix predict(const BandedVarModel& model, const TimeSeries& history, std::size_t h) {
    return predict(model, history.values, h);
}

/// One-step fitted values for t = d..n-1 (column t - d), each using only data before t.
DenseMatrix one_step_fitted(const BandedVarModel& model, const TimeSeries& ts);

enum class ErrorMetric { absolute, squared };

/// How rolling_evaluation obtains its model.
struct FitSpec {
    std::size_t order = 1;
    /// Fixed bandwidth; when empty it is selected by the marginal criterion.
    std::optional<std::size_t> bandwidth;
    SelectionOptions selection;
    bool demean = true;
    /// Refit at every forecast origin instead of once before the holdout.
    bool refit = false;
};

struct HorizonSummary {
    double mean = 0.0;
    double sd = 0.0;
    std::size_t count = 0;
};

struct ForecastReport {
    std::size_t horizon = 0;
    std::size_t holdout = 0;
    /// Forecast origins: origin o forecasts y_o, y_{o+1}, ... from y_0..y_{o-1}.
    std::vector<std::size_t> origins;
    /// errors[h-1] is p x origins.size(); entries without a target are NaN.
    std::vector<DenseMatrix> errors;
    /// predictions[h-1], same layout as errors.
    std::vector<DenseMatrix> predictions;
    std::vector<HorizonSummary> summary;
    /// Bandwidth of the (first) fitted model.
    std::size_t bandwidth = 0;
};

/// Recomputes mean / sample standard deviation per horizon over every finite error.
std::vector<HorizonSummary> summarize_errors(const std::vector<DenseMatrix>& errors);

/**
 * Post-sample evaluation over the last `holdout` time points. By default the
 * model is fitted once on y_0..y_{n-holdout-1} and held fixed; with
 * spec.refit it is refitted on all data before each origin.
 */
ForecastReport rolling_evaluation(const TimeSeries& ts, const FitSpec& spec, std::size_t holdout,
                                  std::size_t h_max, ErrorMetric metric = ErrorMetric::absolute);

struct Deseasonalized {
    TimeSeries residual;
    DenseMatrix seasonal;  ///< p x period; column s is the mean over t = s mod period
};

Deseasonalized deseasonalize(const TimeSeries& ts, std::size_t period);

/// Adds seasonal[:, (start + t) mod period] back to column t of `values`.
DenseMatrix reseasonalize(const DenseMatrix& values, const DenseMatrix& seasonal, std::size_t start);

}  // namespace bandvar
