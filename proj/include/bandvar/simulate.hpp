#pragma once

#include "bandvar/linalg.hpp"
#include "bandvar/model.hpp"
#include "bandvar/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace bandvar {

enum class CoeffSetting { uniform_band, sparse_mixture };
enum class InnovationCovariance { identity, structured_bbt };

CoeffSetting parse_setting(const std::string& s);
std::string to_string(CoeffSetting s);

struct SimConfig {
    std::size_t p = 100;
    std::size_t n = 200;
    std::size_t k0 = 1;
    CoeffSetting setting = CoeffSetting::uniform_band;
    /// Fixes ||A||_2 instead of drawing it from U[0.3, 1).
    std::optional<double> target_norm;
    std::size_t burn_in = 500;
    std::uint64_t seed = 1;
    InnovationCovariance sigma_kind = InnovationCovariance::identity;

    /// Throws std::invalid_argument when the configuration cannot be generated.
    void validate() const;
};

/// In-band entries i.i.d. U[-1, 1], rescaled to spectral norm eta ~ U[0.3, 1)
/// (or to `target_norm`).
BandedMatrix gen_coeff_uniform(std::size_t p, std::size_t k0, Rng& rng,
                               std::optional<double> target_norm = std::nullopt);

/// Entries with |i - j| < k0 are 0 w.p. 0.4 and N(0, 1) otherwise; entries on
/// |i - j| = k0 are +-4 with equal probability. Rescaled as the uniform setting.
BandedMatrix gen_coeff_mixture(std::size_t p, std::size_t k0, Rng& rng,
                               std::optional<double> target_norm = std::nullopt);

/// Mixture draw before rescaling; exposed for checking the zero pattern.
BandedMatrix gen_coeff_mixture_raw(std::size_t p, std::size_t k0, Rng& rng);

/// B B^T with b_11 = 1, otherwise b_ij = 0.8 [|i-j| = 1] + 0.6 [i = j].
DenseMatrix gen_sigma_eps_structured(std::size_t p);

/// Draws one standard innovation coordinate; Gaussian by default.
using InnovationSampler = std::function<double(Rng&)>;

struct SimulateOptions {
    std::size_t burn_in = 500;
    bool allow_explosive = false;
    InnovationSampler sampler = [](Rng& r) { return r.normal(); };
};

/// Runs the recursion from y = 0 for burn_in + n steps with innovations
/// L z, L a factor of sigma_eps (identity when absent), and keeps the last n.
TimeSeries simulate_var(const BandedVarModel& model, std::size_t n, Rng& rng, const SimulateOptions& opts = {});

/// Ground-truth model for a configuration, drawn from rng's "coeffs" substream.
BandedVarModel generate_model(const SimConfig& cfg, const Rng& rng);

struct SimulatedData {
    BandedVarModel model;
    TimeSeries series;
};

/// Model from the "coeffs" substream, path from the "innovations" substream.
SimulatedData simulate(const SimConfig& cfg, const Rng& rng);
inline SimulatedData simulate(const SimConfig& cfg) { return simulate(cfg, Rng(cfg.seed)); }

}  // namespace bandvar
