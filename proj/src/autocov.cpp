#include "bandvar/autocov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bandvar {

namespace {

struct CentredLagPair {
    DenseMatrix lead;  // y_t - ybar,     t = 0..n-j-1
    DenseMatrix lag;   // y_{t+j} - ybar, t = 0..n-j-1
    double n = 0.0;
};

CentredLagPair centred_pair(const TimeSeries& ts, std::size_t lag) {
    const std::size_t n = ts.length();
    if (lag >= n) throw std::invalid_argument("autocovariance lag must be below the series length");
    const Vector mean = ts.values.rowwise().mean();
    const auto m = static_cast<Eigen::Index>(n - lag);
    CentredLagPair out;
    out.lead = ts.values.leftCols(m).colwise() - mean;
    out.lag = ts.values.middleCols(static_cast<Eigen::Index>(lag), m).colwise() - mean;
    out.n = static_cast<double>(n);
    return out;
}

// || B_r(s) - target ||_1 without materialising B_r(s).
double banded_l1_distance(const DenseMatrix& s, const DenseMatrix& target, std::size_t r) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
        double col = 0.0;
        for (Eigen::Index i = 0; i < s.rows(); ++i) {
            const auto off = static_cast<std::size_t>(std::abs(i - j));
            col += std::abs((off <= r ? s(i, j) : 0.0) - target(i, j));
        }
        worst = std::max(worst, col);
    }
    return worst;
}

double thresholded_l1_distance(const DenseMatrix& s, const DenseMatrix& target, double t) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
        double col = 0.0;
        for (Eigen::Index i = 0; i < s.rows(); ++i) col += std::abs((std::abs(s(i, j)) > t ? s(i, j) : 0.0) - target(i, j));
        worst = std::max(worst, col);
    }
    return worst;
}

template <typename Distance>
BootstrapRisk bootstrap_risk(const TimeSeries& ts, std::size_t lag, std::vector<double> grid, const Rng& rng,
                             const BootstrapOptions& opts, Regularizer method, Distance&& distance) {
    if (grid.empty()) throw std::invalid_argument("bootstrap: empty tuning grid");
    if (opts.replicates == 0) throw std::invalid_argument("bootstrap: need at least one replicate");
    if (!opts.weights) throw std::invalid_argument("bootstrap: weight sampler missing");

    const auto pair = centred_pair(ts, lag);
    const DenseMatrix sample = pair.lead * pair.lag.transpose() / pair.n;
    const std::size_t q = opts.replicates;
    const std::size_t g = grid.size();
    std::vector<double> per_replicate(q * g);

    auto replicate = [&](std::size_t k) {
        Rng stream = rng.split(k);
        const auto m = pair.lead.cols();
        Eigen::RowVectorXd u(m);
        for (Eigen::Index t = 0; t < m; ++t) u[t] = opts.weights(stream);
        const DenseMatrix star = (pair.lead.array().rowwise() * u.array()).matrix() * pair.lag.transpose() / pair.n;
        for (std::size_t c = 0; c < g; ++c) per_replicate[k * g + c] = distance(star, sample, grid[c]);
    };

    if (opts.exec == Execution::parallel) {
        const auto count = static_cast<long>(q);
#pragma omp parallel for schedule(static)
        for (long k = 0; k < count; ++k) replicate(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < q; ++k) replicate(k);
    }

    BootstrapRisk out;
    out.method = method;
    out.grid = std::move(grid);
    out.replicates = q;
    out.risk.assign(g, 0.0);
    for (std::size_t k = 0; k < q; ++k)
        for (std::size_t c = 0; c < g; ++c) out.risk[c] += per_replicate[k * g + c];
    for (auto& r : out.risk) r /= static_cast<double>(q);
    for (std::size_t c = 1; c < g; ++c)
        if (out.risk[c] < out.risk[out.best_index]) out.best_index = c;
    return out;
}

}  // namespace

DenseMatrix sample_autocov(const TimeSeries& ts, std::size_t lag) {
    const auto pair = centred_pair(ts, lag);
    return pair.lead * pair.lag.transpose() / pair.n;
}

DenseMatrix band(const DenseMatrix& h, std::size_t r) {
    DenseMatrix out = h;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            if (static_cast<std::size_t>(std::abs(i - j)) > r) out(i, j) = 0.0;
    return out;
}

DenseMatrix threshold(const DenseMatrix& h, double t) {
    if (t < 0.0) throw std::invalid_argument("threshold must be non-negative");
    return h.unaryExpr([t](double v) { return std::abs(v) > t ? v : 0.0; });
}

std::size_t default_band_width(std::size_t n, std::size_t p, double c) {
    if (p <= 1) throw std::invalid_argument("default_band_width: p must exceed 1");
    if (!(c > 0.0)) throw std::invalid_argument("default_band_width: c must be positive");
    const double log_p = std::log(static_cast<double>(p));
    if (log_p >= static_cast<double>(n)) throw std::invalid_argument("default_band_width: need n > log p");
    const double r = std::round(c * std::log(static_cast<double>(n) / log_p));
    return r > 0.0 ? static_cast<std::size_t>(r) : 0;
}

std::vector<std::size_t> default_band_grid(std::size_t n, std::size_t p) {
    const std::size_t top = std::min(p - 1, 2 * default_band_width(n, p, 1.0) + 5);
    std::vector<std::size_t> grid(top + 1);
    for (std::size_t r = 0; r <= top; ++r) grid[r] = r;
    return grid;
}

std::vector<double> default_threshold_grid(const DenseMatrix& h, std::size_t count) {
    if (count < 2) throw std::invalid_argument("threshold grid needs at least two points");
    const double top = h.size() == 0 ? 0.0 : h.cwiseAbs().maxCoeff();
    std::vector<double> grid(count);
    for (std::size_t c = 0; c < count; ++c) grid[c] = top * static_cast<double>(c) / static_cast<double>(count - 1);
    return grid;
}

WeightSampler exponential_weights() {
    return [](Rng& rng) { return rng.exponential(); };
}

WeightSampler unit_weights() {
    return [](Rng&) { return 1.0; };
}

BootstrapRisk bootstrap_select_band(const TimeSeries& ts, std::size_t lag, const std::vector<std::size_t>& grid,
                                    const Rng& rng, const BootstrapOptions& opts) {
    std::vector<double> values(grid.begin(), grid.end());
    return bootstrap_risk(ts, lag, std::move(values), rng, opts, Regularizer::band,
                          [](const DenseMatrix& s, const DenseMatrix& target, double r) {
                              return banded_l1_distance(s, target, static_cast<std::size_t>(r));
                          });
}

BootstrapRisk bootstrap_select_threshold(const TimeSeries& ts, std::size_t lag, const std::vector<double>& grid,
                                         const Rng& rng, const BootstrapOptions& opts) {
    for (double t : grid)
        if (t < 0.0) throw std::invalid_argument("threshold grid values must be non-negative");
    return bootstrap_risk(ts, lag, grid, rng, opts, Regularizer::threshold, thresholded_l1_distance);
}

}  // namespace bandvar
