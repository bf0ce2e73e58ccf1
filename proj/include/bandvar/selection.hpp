#pragma once

#include "bandvar/linalg.hpp"
#include "bandvar/model.hpp"
#include "bandvar/parallel.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bandvar {

struct SelectionOptions {
    /// Largest trial bandwidth K; defaults to floor(sqrt(n)), capped at p - 1.
    std::optional<std::size_t> max_bandwidth;
    /// Penalty constant C_n; defaults to log log n.
    std::optional<double> c_n;
    /// Adds k = 0 to the search grid (the default grid starts at k = 1).
    bool include_zero = false;
    /// Scales the known-order penalty d * tau_i(k) * C_n * log(max(p, n)) / n.
    /// Setting it to 1/d drops the extra factor d.
    double penalty_multiplier = 1.0;
    Execution exec = Execution::parallel;
};

double default_c_n(std::size_t n);
std::size_t default_max_bandwidth(std::size_t n, std::size_t p);

/// Trial bandwidths {1..K} (or {0..K}) after resolving defaults.
std::vector<std::size_t> bandwidth_grid(std::size_t n, std::size_t p, const SelectionOptions& opts);

/// RSS_i(k) for every row and every trial bandwidth at a fixed order.
struct RssSurface {
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t d = 1;
    std::vector<std::size_t> k_grid;
    DenseMatrix rss;  ///< p x k_grid.size()
};

RssSurface compute_rss_surface(const TimeSeries& ts, std::size_t d, const std::vector<std::size_t>& k_grid,
                               Execution exec = Execution::parallel);

/// Known-order penalty: multiplier * d * tau_i(k, d) * C_n * log(max(p, n)) / n.
double marginal_penalty(std::size_t n, std::size_t p, std::size_t i, std::size_t k, std::size_t d, double c_n,
                        double multiplier = 1.0);

/// log RSS_i(k) + marginal_penalty. Throws NumericalError when RSS_i(k) is zero.
double marginal_bic(const TimeSeries& ts, std::size_t i, std::size_t k, std::size_t d, double c_n,
                    double multiplier = 1.0);

struct SelectionTrace {
    std::vector<std::size_t> k_grid;
    std::vector<std::size_t> order_grid;
    /// p x (order_grid.size() * k_grid.size()); column l * |k_grid| + kk holds
    /// the criterion at (order_grid[l], k_grid[kk]).
    DenseMatrix bic;
    std::vector<std::size_t> k_per_row;
    std::vector<std::size_t> d_per_row;
    std::size_t k_hat = 0;
    std::optional<std::size_t> d_hat;
    double c_n = 0.0;

    double at(std::size_t row, std::size_t k_index, std::size_t order_index = 0) const {
        return bic(static_cast<Eigen::Index>(row),
                   static_cast<Eigen::Index>(order_index * k_grid.size() + k_index));
    }
    /// Sum over rows of the criterion at bandwidth k_hat (and d_hat).
    double total_at_selection() const;
};

/// Per-row argmin of the marginal criterion (ties to the smaller k), then the
/// maximum across rows.
SelectionTrace select_bandwidth(const TimeSeries& ts, std::size_t d, const SelectionOptions& opts = {});

/// Same selection from a precomputed RSS surface.
SelectionTrace select_from_rss(const RssSurface& surface, double c_n, double multiplier = 1.0);

/// Joint (k, order) search over the K x L grid with the order-free penalty
/// tau_i(k, l) * C_n * log(max(p, n)) / n; ties go to the smaller (l, k).
SelectionTrace select_bandwidth_and_order(const TimeSeries& ts, std::size_t max_order,
                                          const SelectionOptions& opts = {});

/// Total coefficient count used by the whole-model criterion: (2p + 1)k - k^2 - k.
double joint_parameter_count(std::size_t p, std::size_t k);

struct JointSelection {
    std::size_t k_tilde = 0;
    std::vector<std::size_t> k_grid;
    std::vector<double> criterion;
};

/// Whole-model criterion sum_i log RSS_i(k) + d * |tau~(k)| * C_n * log(max(p, n)) / n.
JointSelection joint_bic_select(const TimeSeries& ts, std::size_t d, const SelectionOptions& opts = {});
JointSelection joint_from_rss(const RssSurface& surface, double c_n);

struct OrderingScore {
    double total_bic = 0.0;
    std::size_t k_hat = 0;
    SelectionTrace trace;
};

/// Applies perm (new series m = old series perm[m]) and scores the ordering by
/// the summed marginal criterion at the selected bandwidth.
OrderingScore ordering_score(const TimeSeries& ts, const std::vector<std::size_t>& perm, std::size_t d,
                             const SelectionOptions& opts = {});

struct OrderingCandidate {
    std::string name;
    std::vector<std::size_t> perm;
};

/**
 * Orderings derived from 2-D coordinates (x = east, y = north):
 *   "ns"       north to south, y descending
 *   "we"       west to east, x ascending
 *   "nwse"     northwest to southeast, x - y ascending
 *   "swne"     southwest to northeast, x + y ascending
 *   "anchor:i" distance to point i ascending
 * Ties keep index order.
 */
std::vector<OrderingCandidate> ordering_candidates(const std::vector<std::array<double, 2>>& coords,
                                                   const std::vector<std::string>& strategies);

}  // namespace bandvar
