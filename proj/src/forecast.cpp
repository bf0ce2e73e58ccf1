#include "bandvar/forecast.hpp"

#include "bandvar/estimation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bandvar {

namespace {

BandedVarModel fit_for(const TimeSeries& train, const FitSpec& spec, Execution exec) {
    std::size_t k = 0;
    if (spec.bandwidth) {
        k = *spec.bandwidth;
    } else {
        SelectionOptions opts = spec.selection;
        opts.exec = exec;
        if (spec.demean) {
            k = select_bandwidth(demeaned(train).first, spec.order, opts).k_hat;
        } else {
            k = select_bandwidth(train, spec.order, opts).k_hat;
        }
    }
    return fit_banded_var(train, k, spec.order, spec.demean, exec).model;
}

}  // namespace

DenseMatrix predict(const BandedVarModel& model, const DenseMatrix& history, std::size_t h) {
    const std::size_t p = model.dim();
    const std::size_t d = model.order();
    if (static_cast<std::size_t>(history.rows()) != p) throw std::invalid_argument("predict: history has wrong dimension");
    if (static_cast<std::size_t>(history.cols()) < d) throw std::invalid_argument("predict: history shorter than model order");

    const Vector mean = model.mean() ? *model.mean() : Vector::Zero(static_cast<Eigen::Index>(p));
    // window[l] = centred y_{t-l}, newest first
    std::vector<Vector> window(d);
    for (std::size_t l = 0; l < d; ++l) window[l] = history.col(history.cols() - 1 - static_cast<Eigen::Index>(l)) - mean;

    DenseMatrix out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(h));
    for (std::size_t s = 0; s < h; ++s) {
        Vector next = Vector::Zero(static_cast<Eigen::Index>(p));
        for (std::size_t l = 0; l < d; ++l) next += model.coeff(l).multiply(window[l]);
        for (std::size_t l = d - 1; l > 0; --l) window[l] = window[l - 1];
        window[0] = next;
        out.col(static_cast<Eigen::Index>(s)) = next + mean;
    }
    return out;
}

DenseMatrix one_step_fitted(const BandedVarModel& model, const TimeSeries& ts) {
    const std::size_t d = model.order();
    const std::size_t n = ts.length();
    if (n <= d) throw std::invalid_argument("one_step_fitted: series shorter than model order");
    DenseMatrix out(static_cast<Eigen::Index>(ts.dim()), static_cast<Eigen::Index>(n - d));
    for (std::size_t t = d; t < n; ++t)
        out.col(static_cast<Eigen::Index>(t - d)) =
            predict(model, ts.values.middleCols(static_cast<Eigen::Index>(t - d), static_cast<Eigen::Index>(d)), 1);
    return out;
}

std::vector<HorizonSummary> summarize_errors(const std::vector<DenseMatrix>& errors) {
    std::vector<HorizonSummary> out(errors.size());
    for (std::size_t h = 0; h < errors.size(); ++h) {
        double sum = 0.0;
        std::size_t count = 0;
        for (Eigen::Index c = 0; c < errors[h].cols(); ++c)
            for (Eigen::Index r = 0; r < errors[h].rows(); ++r)
                if (std::isfinite(errors[h](r, c))) {
                    sum += errors[h](r, c);
                    ++count;
                }
        const double mean = count ? sum / static_cast<double>(count) : 0.0;
        double ss = 0.0;
        for (Eigen::Index c = 0; c < errors[h].cols(); ++c)
            for (Eigen::Index r = 0; r < errors[h].rows(); ++r)
                if (std::isfinite(errors[h](r, c))) ss += (errors[h](r, c) - mean) * (errors[h](r, c) - mean);
        out[h].mean = mean;
        out[h].sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
        out[h].count = count;
    }
    return out;
}

ForecastReport rolling_evaluation(const TimeSeries& ts, const FitSpec& spec, std::size_t holdout,
                                  std::size_t h_max, ErrorMetric metric) {
    const std::size_t n = ts.length();
    const std::size_t p = ts.dim();
    if (holdout == 0 || h_max == 0) throw std::invalid_argument("rolling_evaluation: holdout and horizon must be positive");
    if (holdout + spec.order + 2 > n) throw std::invalid_argument("rolling_evaluation: holdout leaves no training window");

    ForecastReport rep;
    rep.horizon = h_max;
    rep.holdout = holdout;
    for (std::size_t o = n - holdout; o < n; ++o) rep.origins.push_back(o);
    const auto cols = static_cast<Eigen::Index>(rep.origins.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.errors.assign(h_max, DenseMatrix::Constant(static_cast<Eigen::Index>(p), cols, nan));
    rep.predictions.assign(h_max, DenseMatrix::Constant(static_cast<Eigen::Index>(p), cols, nan));

    std::optional<BandedVarModel> fixed;
    if (!spec.refit) {
        fixed.emplace(fit_for(ts.head(n - holdout), spec, Execution::parallel));
        rep.bandwidth = fixed->bandwidth();
    }
    std::vector<std::size_t> bandwidths(rep.origins.size(), 0);

    auto evaluate = [&](std::size_t idx) {
        const std::size_t origin = rep.origins[idx];
        const BandedVarModel model = spec.refit ? fit_for(ts.head(origin), spec, Execution::serial) : *fixed;
        bandwidths[idx] = model.bandwidth();
        const DenseMatrix pred = predict(model, ts.values.leftCols(static_cast<Eigen::Index>(origin)), h_max);
        for (std::size_t h = 0; h < h_max; ++h) {
            const std::size_t target = origin + h;
            const auto c = static_cast<Eigen::Index>(idx);
            rep.predictions[h].col(c) = pred.col(static_cast<Eigen::Index>(h));
            if (target >= n) continue;
            const Vector diff = ts.values.col(static_cast<Eigen::Index>(target)) - pred.col(static_cast<Eigen::Index>(h));
            rep.errors[h].col(c) = metric == ErrorMetric::absolute ? Vector(diff.cwiseAbs()) : Vector(diff.cwiseAbs2());
        }
    };

    if (spec.refit) {
        const auto count = static_cast<long>(rep.origins.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) evaluate(static_cast<std::size_t>(i));
        rep.bandwidth = bandwidths.front();
    } else {
        for (std::size_t i = 0; i < rep.origins.size(); ++i) evaluate(i);
    }
    rep.summary = summarize_errors(rep.errors);
    return rep;
}

Deseasonalized deseasonalize(const TimeSeries& ts, std::size_t period) {
    const std::size_t n = ts.length();
    if (period == 0) throw std::invalid_argument("deseasonalize: period must be positive");
    if (n < period) throw std::invalid_argument("deseasonalize: series shorter than one period");
    const auto p = static_cast<Eigen::Index>(ts.dim());
    DenseMatrix seasonal = DenseMatrix::Zero(p, static_cast<Eigen::Index>(period));
    std::vector<double> counts(period, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        seasonal.col(static_cast<Eigen::Index>(t % period)) += ts.values.col(static_cast<Eigen::Index>(t));
        counts[t % period] += 1.0;
    }
    for (std::size_t s = 0; s < period; ++s) seasonal.col(static_cast<Eigen::Index>(s)) /= counts[s];
    DenseMatrix resid = ts.values;
    for (std::size_t t = 0; t < n; ++t)
        resid.col(static_cast<Eigen::Index>(t)) -= seasonal.col(static_cast<Eigen::Index>(t % period));
    return {TimeSeries(std::move(resid), ts.labels, ts.coords), std::move(seasonal)};
}

DenseMatrix reseasonalize(const DenseMatrix& values, const DenseMatrix& seasonal, std::size_t start) {
    const auto period = static_cast<std::size_t>(seasonal.cols());
    if (period == 0 || seasonal.rows() != values.rows()) throw std::invalid_argument("reseasonalize: shape mismatch");
    DenseMatrix out = values;
    for (Eigen::Index t = 0; t < values.cols(); ++t)
        out.col(t) += seasonal.col(static_cast<Eigen::Index>((start + static_cast<std::size_t>(t)) % period));
    return out;
}

}  // namespace bandvar
