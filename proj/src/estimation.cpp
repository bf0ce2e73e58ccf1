#include "bandvar/estimation.hpp"

#include "bandvar/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bandvar {

namespace {

std::size_t band_lo(std::size_t i, std::size_t k) { return i >= k ? i - k : 0; }
std::size_t band_hi(std::size_t i, std::size_t k, std::size_t p) { return std::min(p - 1, i + k); }

void check_row_args(std::size_t i, std::size_t k, std::size_t d, std::size_t p) {
    if (p == 0 || i >= p || k >= p || d == 0) {
        std::ostringstream os;
        os << "invalid row arguments: i=" << i << " k=" << k << " d=" << d << " p=" << p;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

std::size_t tau(std::size_t i, std::size_t k, std::size_t d, std::size_t p) {
    check_row_args(i, k, d, p);
    return d * (band_hi(i, k, p) - band_lo(i, k) + 1);
}

std::size_t min_length_for(std::size_t i, std::size_t k, std::size_t d, std::size_t p) {
    return d + tau(i, k, d, p) + 1;
}

RowDesign build_row_design(const TimeSeries& ts, std::size_t i, std::size_t k, std::size_t d) {
    const std::size_t p = ts.dim();
    const std::size_t n = ts.length();
    const std::size_t cols = tau(i, k, d, p);
    const std::size_t need = min_length_for(i, k, d, p);
    if (n < need) {
        std::ostringstream os;
        os << "series too short for row " << i << " with k=" << k << ", d=" << d;
        throw InsufficientDataError(os.str(), need);
    }
    const std::size_t lo = band_lo(i, k);
    const std::size_t hi = band_hi(i, k, p);
    const auto rows = static_cast<Eigen::Index>(n - d);

    RowDesign out;
    out.row = i;
    out.k = k;
    out.d = d;
    out.x.resize(rows, static_cast<Eigen::Index>(cols));
    out.y = ts.values.row(static_cast<Eigen::Index>(i)).segment(static_cast<Eigen::Index>(d), rows).transpose();
    out.columns.reserve(cols);
    Eigen::Index c = 0;
    for (std::size_t lag = 1; lag <= d; ++lag) {
        for (std::size_t j = lo; j <= hi; ++j, ++c) {
            out.x.col(c) = ts.values.row(static_cast<Eigen::Index>(j))
                               .segment(static_cast<Eigen::Index>(d - lag), rows)
                               .transpose();
            out.columns.push_back({lag, j});
        }
    }
    return out;
}

RowFit fit_row(const RowDesign& design) {
    auto [beta, rss] = lstsq(design.x, design.y);
    return {std::move(beta), rss};
}

std::vector<BandedMatrix> assemble_coefficients(const std::vector<Vector>& betas, std::size_t p,
                                                std::size_t k, std::size_t d) {
    if (betas.size() != p) throw std::invalid_argument("assemble_coefficients: need one beta per row");
    std::vector<BandedMatrix> coeffs(d, BandedMatrix(p, k));
    for (std::size_t i = 0; i < p; ++i) {
        if (static_cast<std::size_t>(betas[i].size()) != tau(i, k, d, p))
            throw std::invalid_argument("assemble_coefficients: beta length does not match tau");
        Eigen::Index c = 0;
        for (std::size_t lag = 0; lag < d; ++lag)
            for (std::size_t j = band_lo(i, k); j <= band_hi(i, k, p); ++j) coeffs[lag].set(i, j, betas[i][c++]);
    }
    return coeffs;
}

std::vector<Vector> extract_betas(const std::vector<BandedMatrix>& coeffs, std::size_t k) {
    if (coeffs.empty()) return {};
    const std::size_t p = coeffs.front().size();
    const std::size_t d = coeffs.size();
    std::vector<Vector> betas(p);
    for (std::size_t i = 0; i < p; ++i) {
        betas[i].resize(static_cast<Eigen::Index>(tau(i, k, d, p)));
        Eigen::Index c = 0;
        for (std::size_t lag = 0; lag < d; ++lag)
            for (std::size_t j = band_lo(i, k); j <= band_hi(i, k, p); ++j) betas[i][c++] = coeffs[lag](i, j);
    }
    return betas;
}

std::pair<TimeSeries, Vector> demeaned(const TimeSeries& ts) {
    Vector mean = ts.values.rowwise().mean();
    DenseMatrix centred = ts.values.colwise() - mean;
    return {TimeSeries(std::move(centred), ts.labels, ts.coords), std::move(mean)};
}

FitReport fit_banded_var(const TimeSeries& ts, std::size_t k, std::size_t d, bool demean, Execution exec) {
    const std::size_t p = ts.dim();
    const std::size_t n = ts.length();
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t need = min_length_for(i, k, d, p);
        if (n < need) throw InsufficientDataError("series too short for banded fit", need);
    }

    std::optional<Vector> mean;
    TimeSeries centred;
    const TimeSeries* data = &ts;
    if (demean) {
        auto [c, mu] = demeaned(ts);
        centred = std::move(c);
        mean = std::move(mu);
        data = &centred;
    }

    std::vector<Vector> betas(p);
    std::vector<double> rss(p, 0.0);
    std::vector<char> singular(p, 0);

    auto fit_one = [&](std::size_t i) {
        try {
            auto fit = fit_row(build_row_design(*data, i, k, d));
            betas[i] = std::move(fit.beta);
            rss[i] = fit.rss;
        } catch (const SingularDesignError&) {
            singular[i] = 1;
        }
    };

    if (exec == Execution::parallel) {
        const auto count = static_cast<long>(p);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) fit_one(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < p; ++i) fit_one(i);
    }

    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < p; ++i)
        if (singular[i]) bad.push_back(i);
    if (!bad.empty()) throw SingularRowsError(std::move(bad));

    std::vector<double> sigma_hat(p);
    for (std::size_t i = 0; i < p; ++i) sigma_hat[i] = rss[i] / static_cast<double>(n - d);

    BandedVarModel model(assemble_coefficients(betas, p, k, d), k, std::nullopt, std::move(mean));
    return {std::move(model), std::move(rss), std::move(betas), std::move(sigma_hat)};
}

}  // namespace bandvar
