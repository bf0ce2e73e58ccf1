#pragma once

#include "bandvar/parallel.hpp"
#include "bandvar/simulate.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bandvar::experiments {

// Monte Carlo drivers for the simulation tables. Replication r draws all of
// its randomness from Rng(seed).split(r), so results do not depend on the
// number of threads. With Execution::parallel the replications are spread
// over OpenMP threads and each replication runs its kernels serially.

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};
MeanSd mean_sd(const std::vector<double>& xs);

struct Frequencies {
    double equal = 0.0;  ///< percent of replications with estimate == k0
    double over = 0.0;
    double under = 0.0;
};
Frequencies frequencies(const std::vector<std::size_t>& picks, std::size_t k0);

struct SelectionExperiment {
    std::size_t p = 100;
    std::size_t n = 200;
    std::size_t k0 = 1;
    CoeffSetting setting = CoeffSetting::uniform_band;
    std::size_t reps = 100;
    std::size_t max_bandwidth = 15;
    std::optional<double> c_n;
    bool include_zero = false;  ///< search k = 0 as well as 1..K
    std::uint64_t seed = 1;
};

struct SelectionOutcome {
    std::vector<std::size_t> marginal;  ///< k-hat per replication
    std::vector<std::size_t> joint;     ///< k-tilde per replication
};

/// Marginal and whole-model selections computed from the same RSS surface.
SelectionOutcome run_selection(const SelectionExperiment& e, Execution exec = Execution::parallel);

struct EstimationOutcome {
    std::vector<std::size_t> k_hat;
    std::vector<double> l1_est, l2_est, fro_est;     ///< fitted at k-hat
    std::vector<double> l1_true, l2_true, fro_true;  ///< fitted at k0
};

EstimationOutcome run_estimation(const SelectionExperiment& e, Execution exec = Execution::parallel);

struct AutocovExperiment {
    std::size_t p = 100;
    std::size_t n = 200;
    std::size_t k0 = 3;
    double target_norm = 0.8;
    std::size_t reps = 100;
    std::size_t bootstrap_replicates = 100;
    std::vector<std::size_t> lags{0, 1};
    std::uint64_t seed = 1;
};

struct AutocovErrors {
    std::vector<double> banded, thresholded, sample;
};

struct AutocovOutcome {
    /// Indexed [lag index]; L1 and spectral errors against the exact autocovariance.
    std::vector<AutocovErrors> l1, spectral;
    std::vector<std::vector<double>> selected_r, selected_t;
};

AutocovOutcome run_autocov(const AutocovExperiment& e, Execution exec = Execution::parallel);

struct OrderingExperiment {
    std::size_t p = 100;
    std::size_t n = 200;  ///< training length; two more points are simulated for scoring
    std::size_t k0 = 2;
    std::size_t reps = 20;
    std::size_t max_bandwidth = 15;
    bool include_zero = true;
    std::size_t group = 5;  ///< block size of the local permutation
    std::uint64_t seed = 1;
};

struct OrderingResult {
    std::string name;
    std::vector<double> total_bic;
    std::vector<double> k_hat;
    std::vector<double> one_step;  ///< mean absolute one-step error over series
    std::vector<double> two_step;
};

/// True ordering, a within-block local permutation and two random permutations.
std::vector<OrderingResult> run_ordering(const OrderingExperiment& e, Execution exec = Execution::parallel);

/// Permutation that shuffles indices within consecutive blocks of `group`.
std::vector<std::size_t> local_permutation(std::size_t p, std::size_t group, Rng& rng);
std::vector<std::size_t> random_permutation(std::size_t p, Rng& rng);

// Table writers used by the `bench` command.
void write_frequency_header(std::ostream& out);
void write_frequency_row(std::ostream& out, std::size_t p, std::size_t k0, std::size_t n, std::size_t reps,
                         const Frequencies& uniform, const Frequencies& mixture);
void write_estimation_header(std::ostream& out);
void write_estimation_row(std::ostream& out, std::size_t p, std::size_t k0, std::size_t n, std::size_t reps,
                          const EstimationOutcome& o);
void write_autocov_table(std::ostream& out, const AutocovExperiment& e, const AutocovOutcome& o);
void write_ordering_table(std::ostream& out, const std::vector<OrderingResult>& results);

}  // namespace bandvar::experiments
