#pragma once

#include "bandvar/linalg.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bandvar {

/**
 * VAR(d) model y_t = A_1 y_{t-1} + ... + A_d y_{t-d} + e_t whose coefficient
 * matrices all vanish outside |i - j| <= k0.
 *
 * `mean`, when present, is the per-series level the model was fitted around;
 * predictions operate on y - mean and add it back.
 */
class BandedVarModel {
public:
    BandedVarModel(std::vector<BandedMatrix> coeffs, std::size_t k0,
                   std::optional<DenseMatrix> sigma_eps = std::nullopt,
                   std::optional<Vector> mean = std::nullopt);

    std::size_t dim() const noexcept { return p_; }
    std::size_t order() const noexcept { return coeffs_.size(); }
    std::size_t bandwidth() const noexcept { return k0_; }

    const BandedMatrix& coeff(std::size_t lag) const { return coeffs_.at(lag); }
    const std::vector<BandedMatrix>& coeffs() const noexcept { return coeffs_; }
    const std::optional<DenseMatrix>& sigma_eps() const noexcept { return sigma_eps_; }
    const std::optional<Vector>& mean() const noexcept { return mean_; }

private:
    std::size_t p_;
    std::size_t k0_;
    std::vector<BandedMatrix> coeffs_;
    std::optional<DenseMatrix> sigma_eps_;
    std::optional<Vector> mean_;
};

/// p-variate series; column t of `values` is y_t.
struct TimeSeries {
    DenseMatrix values;
    std::vector<std::string> labels;
    std::optional<std::vector<std::array<double, 2>>> coords;

    TimeSeries() = default;
    explicit TimeSeries(DenseMatrix v, std::vector<std::string> names = {},
                        std::optional<std::vector<std::array<double, 2>>> xy = std::nullopt);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(values.rows()); }
    std::size_t length() const noexcept { return static_cast<std::size_t>(values.cols()); }

    /// First `n` time points.
    TimeSeries head(std::size_t n) const;

    /// Series reordered so new series m is old series perm[m].
    TimeSeries permuted(const std::vector<std::size_t>& perm) const;
};

/// Labels "y1", "y2", ... used when a series carries no names.
std::vector<std::string> default_labels(std::size_t p);

/// Throws std::invalid_argument unless perm is a permutation of 0..p-1.
void validate_permutation(const std::vector<std::size_t>& perm, std::size_t p);

/// dp x dp companion matrix: (A_1 ... A_d) on top, identity blocks below the
/// block diagonal.
DenseMatrix companion_matrix(const BandedVarModel& m);

bool is_stationary(const BandedVarModel& m, double margin = 1e-6);

struct AutocovSeries {
    DenseMatrix matrix;
    /// Number of A^i S (A^T)^i terms summed beyond S itself.
    std::size_t terms_used = 0;
};

/**
 * Lag-j autocovariance cov(y_t, y_{t+j}) of a stationary VAR(1):
 * S_0 = S_e + sum_i A^i S_e (A^T)^i, truncated once a term's Frobenius norm
 * drops below 1e-12 or after `max_terms` terms; S_j = S_0 (A^T)^j.
 */
AutocovSeries theoretical_autocov_var1(const BandedVarModel& m, std::size_t lag,
                                       std::size_t max_terms = 100000);

struct ApproximationGap {
    double spectral = 0.0;
    double l1 = 0.0;
};

/// Norms of S_j - S_j^(r), where S_j^(r) keeps only the first r series terms.
ApproximationGap banded_approximation_gap(const BandedVarModel& m, std::size_t lag, std::size_t r);

}  // namespace bandvar
