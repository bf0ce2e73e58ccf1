#include "bandvar/selection.hpp"

#include "bandvar/errors.hpp"
#include "bandvar/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bandvar {

namespace {

double log_dim_term(std::size_t n, std::size_t p) {
    return std::log(static_cast<double>(std::max(n, p)));
}

double checked_log_rss(double rss, std::size_t row, std::size_t k) {
    if (!(rss > 0.0)) {
        std::ostringstream os;
        os << "zero residual sum of squares in row " << row << " at k=" << k << " (exact fit)";
        throw NumericalError(os.str());
    }
    return std::log(rss);
}

void require_length(const TimeSeries& ts, std::size_t k_max, std::size_t d) {
    const std::size_t p = ts.dim();
    std::size_t need = 0;
    for (std::size_t i = 0; i < p; ++i) need = std::max(need, min_length_for(i, k_max, d, p));
    if (ts.length() < need) throw InsufficientDataError("series too short for the bandwidth search grid", need);
}

// Flattened (row, cell) loop shared by the serial and OpenMP paths.
template <typename Body>
void for_each_cell(std::size_t rows, std::size_t cells, Execution exec, Body&& body) {
    const std::size_t total = rows * cells;
    if (exec == Execution::parallel) {
        const auto count = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic)
        for (long t = 0; t < count; ++t) body(static_cast<std::size_t>(t) / cells, static_cast<std::size_t>(t) % cells);
    } else {
        for (std::size_t t = 0; t < total; ++t) body(t / cells, t % cells);
    }
}

}  // namespace

double default_c_n(std::size_t n) {
    if (n < 3) throw std::invalid_argument("default C_n = log log n needs n >= 3");
    return std::log(std::log(static_cast<double>(n)));
}

std::size_t default_max_bandwidth(std::size_t n, std::size_t p) {
    const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    return std::max<std::size_t>(1, std::min(root, p - 1));
}

std::vector<std::size_t> bandwidth_grid(std::size_t n, std::size_t p, const SelectionOptions& opts) {
    if (p < 2 && !opts.include_zero) throw std::invalid_argument("bandwidth search needs p >= 2");
    std::size_t k_max = opts.max_bandwidth.value_or(default_max_bandwidth(n, p));
    if (k_max == 0 && !opts.include_zero) throw std::invalid_argument("K must be at least 1");
    k_max = std::min(k_max, p - 1);
    std::vector<std::size_t> grid;
    for (std::size_t k = opts.include_zero ? 0 : 1; k <= k_max; ++k) grid.push_back(k);
    return grid;
}

RssSurface compute_rss_surface(const TimeSeries& ts, std::size_t d, const std::vector<std::size_t>& k_grid,
                               Execution exec) {
    if (k_grid.empty()) throw std::invalid_argument("empty bandwidth grid");
    require_length(ts, *std::max_element(k_grid.begin(), k_grid.end()), d);
    RssSurface s;
    s.n = ts.length();
    s.p = ts.dim();
    s.d = d;
    s.k_grid = k_grid;
    s.rss.resize(static_cast<Eigen::Index>(s.p), static_cast<Eigen::Index>(k_grid.size()));
    std::vector<char> singular(s.p * k_grid.size(), 0);
    for_each_cell(s.p, k_grid.size(), exec, [&](std::size_t i, std::size_t kk) {
        try {
            s.rss(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(kk)) =
                fit_row(build_row_design(ts, i, k_grid[kk], d)).rss;
        } catch (const SingularDesignError&) {
            singular[i * k_grid.size() + kk] = 1;
        }
    });
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < s.p; ++i)
        for (std::size_t kk = 0; kk < k_grid.size(); ++kk)
            if (singular[i * k_grid.size() + kk]) {
                bad.push_back(i);
                break;
            }
    if (!bad.empty()) throw SingularRowsError(std::move(bad));
    return s;
}

double marginal_penalty(std::size_t n, std::size_t p, std::size_t i, std::size_t k, std::size_t d, double c_n,
                        double multiplier) {
    return multiplier * static_cast<double>(d) * static_cast<double>(tau(i, k, d, p)) * c_n * log_dim_term(n, p) /
           static_cast<double>(n);
}

double marginal_bic(const TimeSeries& ts, std::size_t i, std::size_t k, std::size_t d, double c_n,
                    double multiplier) {
    const double rss = fit_row(build_row_design(ts, i, k, d)).rss;
    return checked_log_rss(rss, i, k) + marginal_penalty(ts.length(), ts.dim(), i, k, d, c_n, multiplier);
}

double SelectionTrace::total_at_selection() const {
    const auto kk = static_cast<std::size_t>(std::find(k_grid.begin(), k_grid.end(), k_hat) - k_grid.begin());
    std::size_t ll = 0;
    if (d_hat) ll = static_cast<std::size_t>(std::find(order_grid.begin(), order_grid.end(), *d_hat) - order_grid.begin());
    double total = 0.0;
    for (Eigen::Index i = 0; i < bic.rows(); ++i) total += at(static_cast<std::size_t>(i), kk, ll);
    return total;
}

SelectionTrace select_from_rss(const RssSurface& surface, double c_n, double multiplier) {
    SelectionTrace t;
    t.k_grid = surface.k_grid;
    t.order_grid = {surface.d};
    t.c_n = c_n;
    const std::size_t kn = surface.k_grid.size();
    t.bic.resize(static_cast<Eigen::Index>(surface.p), static_cast<Eigen::Index>(kn));
    t.k_per_row.assign(surface.p, 0);
    t.d_per_row.assign(surface.p, surface.d);
    for (std::size_t i = 0; i < surface.p; ++i) {
        std::size_t best = 0;
        for (std::size_t kk = 0; kk < kn; ++kk) {
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(kk);
            const std::size_t k = surface.k_grid[kk];
            t.bic(r, c) = checked_log_rss(surface.rss(r, c), i, k) +
                          marginal_penalty(surface.n, surface.p, i, k, surface.d, c_n, multiplier);
            if (t.bic(r, c) < t.bic(r, static_cast<Eigen::Index>(best))) best = kk;
        }
        t.k_per_row[i] = surface.k_grid[best];
    }
    t.k_hat = *std::max_element(t.k_per_row.begin(), t.k_per_row.end());
    return t;
}

SelectionTrace select_bandwidth(const TimeSeries& ts, std::size_t d, const SelectionOptions& opts) {
    const auto grid = bandwidth_grid(ts.length(), ts.dim(), opts);
    const double c_n = opts.c_n.value_or(default_c_n(ts.length()));
    return select_from_rss(compute_rss_surface(ts, d, grid, opts.exec), c_n, opts.penalty_multiplier);
}

SelectionTrace select_bandwidth_and_order(const TimeSeries& ts, std::size_t max_order,
                                          const SelectionOptions& opts) {
    if (max_order == 0) throw std::invalid_argument("L must be at least 1");
    const std::size_t n = ts.length();
    const std::size_t p = ts.dim();
    const auto grid = bandwidth_grid(n, p, opts);
    require_length(ts, grid.back(), max_order);
    const double c_n = opts.c_n.value_or(default_c_n(n));
    const std::size_t kn = grid.size();
    const std::size_t cells = max_order * kn;

    SelectionTrace t;
    t.k_grid = grid;
    t.order_grid.resize(max_order);
    std::iota(t.order_grid.begin(), t.order_grid.end(), std::size_t{1});
    t.c_n = c_n;
    t.bic.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(cells));
    DenseMatrix rss(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(cells));
    std::vector<char> singular(p * cells, 0);
    for_each_cell(p, cells, opts.exec, [&](std::size_t i, std::size_t cell) {
        const std::size_t order = cell / kn + 1;
        try {
            rss(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cell)) =
                fit_row(build_row_design(ts, i, grid[cell % kn], order)).rss;
        } catch (const SingularDesignError&) {
            singular[i * cells + cell] = 1;
        }
    });
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < p; ++i)
        if (std::any_of(singular.begin() + static_cast<long>(i * cells),
                        singular.begin() + static_cast<long>((i + 1) * cells), [](char c) { return c != 0; }))
            bad.push_back(i);
    if (!bad.empty()) throw SingularRowsError(std::move(bad));

    t.k_per_row.assign(p, 0);
    t.d_per_row.assign(p, 0);
    for (std::size_t i = 0; i < p; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        std::size_t best = 0;
        for (std::size_t cell = 0; cell < cells; ++cell) {
            const std::size_t order = cell / kn + 1;
            const std::size_t k = grid[cell % kn];
            const auto c = static_cast<Eigen::Index>(cell);
            t.bic(r, c) = checked_log_rss(rss(r, c), i, k) +
                          static_cast<double>(tau(i, k, order, p)) * c_n * log_dim_term(n, p) / static_cast<double>(n);
            if (t.bic(r, c) < t.bic(r, static_cast<Eigen::Index>(best))) best = cell;
        }
        t.k_per_row[i] = grid[best % kn];
        t.d_per_row[i] = best / kn + 1;
    }
    t.k_hat = *std::max_element(t.k_per_row.begin(), t.k_per_row.end());
    t.d_hat = *std::max_element(t.d_per_row.begin(), t.d_per_row.end());
    return t;
}

double joint_parameter_count(std::size_t p, std::size_t k) {
    const auto pk = static_cast<double>(p);
    const auto kk = static_cast<double>(k);
    return (2.0 * pk + 1.0) * kk - kk * kk - kk;
}

JointSelection joint_from_rss(const RssSurface& surface, double c_n) {
    JointSelection out;
    out.k_grid = surface.k_grid;
    out.criterion.resize(surface.k_grid.size());
    std::size_t best = 0;
    for (std::size_t kk = 0; kk < surface.k_grid.size(); ++kk) {
        const std::size_t k = surface.k_grid[kk];
        double sum = 0.0;
        for (std::size_t i = 0; i < surface.p; ++i)
            sum += checked_log_rss(surface.rss(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(kk)), i, k);
        sum += static_cast<double>(surface.d) * std::abs(joint_parameter_count(surface.p, k)) * c_n *
               log_dim_term(surface.n, surface.p) / static_cast<double>(surface.n);
        out.criterion[kk] = sum;
        if (sum < out.criterion[best]) best = kk;
    }
    out.k_tilde = surface.k_grid[best];
    return out;
}

JointSelection joint_bic_select(const TimeSeries& ts, std::size_t d, const SelectionOptions& opts) {
    const auto grid = bandwidth_grid(ts.length(), ts.dim(), opts);
    const double c_n = opts.c_n.value_or(default_c_n(ts.length()));
    return joint_from_rss(compute_rss_surface(ts, d, grid, opts.exec), c_n);
}

OrderingScore ordering_score(const TimeSeries& ts, const std::vector<std::size_t>& perm, std::size_t d,
                             const SelectionOptions& opts) {
    validate_permutation(perm, ts.dim());
    OrderingScore s;
    s.trace = select_bandwidth(ts.permuted(perm), d, opts);
    s.k_hat = s.trace.k_hat;
    s.total_bic = s.trace.total_at_selection();
    return s;
}

std::vector<OrderingCandidate> ordering_candidates(const std::vector<std::array<double, 2>>& coords,
                                                   const std::vector<std::string>& strategies) {
    if (coords.empty()) throw std::invalid_argument("ordering_candidates: coordinates required");
    const std::size_t p = coords.size();
    std::vector<OrderingCandidate> out;
    for (const auto& name : strategies) {
        std::vector<double> key(p);
        if (name == "ns") {
            for (std::size_t i = 0; i < p; ++i) key[i] = -coords[i][1];
        } else if (name == "we") {
            for (std::size_t i = 0; i < p; ++i) key[i] = coords[i][0];
        } else if (name == "nwse") {
            for (std::size_t i = 0; i < p; ++i) key[i] = coords[i][0] - coords[i][1];
        } else if (name == "swne") {
            for (std::size_t i = 0; i < p; ++i) key[i] = coords[i][0] + coords[i][1];
        } else if (name.rfind("anchor:", 0) == 0) {
            std::size_t anchor = 0;
            try {
                std::size_t used = 0;
                anchor = std::stoul(name.substr(7), &used);
                if (used != name.size() - 7) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw std::invalid_argument("ordering strategy '" + name + "': bad anchor index");
            }
            if (anchor >= p) throw std::invalid_argument("ordering strategy '" + name + "': anchor out of range");
            for (std::size_t i = 0; i < p; ++i)
                key[i] = std::hypot(coords[i][0] - coords[anchor][0], coords[i][1] - coords[anchor][1]);
        } else {
            throw std::invalid_argument("unknown ordering strategy '" + name + "'");
        }
        std::vector<std::size_t> perm(p);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
        out.push_back({name, std::move(perm)});
    }
    return out;
}

}  // namespace bandvar
