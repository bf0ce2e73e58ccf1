#include "bandvar/simulate.hpp"

#include "bandvar/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bandvar {

namespace {

BandedMatrix rescale(BandedMatrix a, Rng& rng, std::optional<double> target_norm) {
    const double norm = spectral_norm(a.to_dense());
    const double eta = target_norm ? *target_norm : rng.uniform(0.3, 1.0);
    return a.scaled(eta / norm);
}

void check_dims(std::size_t p, std::size_t k0) {
    if (p < 2 * k0 + 1) throw std::invalid_argument("coefficient generator needs p >= 2 k0 + 1");
}

// Returns L with L L^T = s; falls back to a spectral factor for singular s.
DenseMatrix covariance_factor(const DenseMatrix& s) {
    Eigen::LLT<DenseMatrix> llt(s);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s);
    const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal();
}

}  // namespace

CoeffSetting parse_setting(const std::string& s) {
    if (s == "uniform" || s == "uniform_band" || s == "i") return CoeffSetting::uniform_band;
    if (s == "mixture" || s == "sparse_mixture" || s == "ii") return CoeffSetting::sparse_mixture;
    throw std::invalid_argument("unknown coefficient setting '" + s + "'");
}

std::string to_string(CoeffSetting s) { return s == CoeffSetting::uniform_band ? "uniform" : "mixture"; }

void SimConfig::validate() const {
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (p < 2 * k0 + 1) throw std::invalid_argument("p must be at least 2 k0 + 1");
    if (setting == CoeffSetting::sparse_mixture && k0 == 0)
        throw std::invalid_argument("mixture setting needs k0 >= 1 (band edge entries undefined for k0 = 0)");
    if (target_norm && !(*target_norm > 0.0 && *target_norm < 1.0))
        throw std::invalid_argument("target norm must lie in (0, 1)");
}

BandedMatrix gen_coeff_uniform(std::size_t p, std::size_t k0, Rng& rng, std::optional<double> target_norm) {
    check_dims(p, k0);
    for (;;) {
        BandedMatrix a(p, k0);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i >= k0 ? i - k0 : 0; j <= std::min(p - 1, i + k0); ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
        if (a.to_dense().cwiseAbs().maxCoeff() > 0.0) return rescale(std::move(a), rng, target_norm);
    }
}

BandedMatrix gen_coeff_mixture_raw(std::size_t p, std::size_t k0, Rng& rng) {
    check_dims(p, k0);
    if (k0 == 0) throw std::invalid_argument("mixture setting needs k0 >= 1");
    BandedMatrix a(p, k0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i >= k0 ? i - k0 : 0; j <= std::min(p - 1, i + k0); ++j) {
            const std::size_t off = i > j ? i - j : j - i;
            if (off == k0) {
                a.set(i, j, rng.uniform01() < 0.5 ? -4.0 : 4.0);
            } else {
                const bool zero = rng.uniform01() < 0.4;
                const double z = rng.normal();
                a.set(i, j, zero ? 0.0 : z);
            }
        }
    }
    return a;
}

BandedMatrix gen_coeff_mixture(std::size_t p, std::size_t k0, Rng& rng, std::optional<double> target_norm) {
    return rescale(gen_coeff_mixture_raw(p, k0, rng), rng, target_norm);
}

DenseMatrix gen_sigma_eps_structured(std::size_t p) {
    if (p < 2) throw std::invalid_argument("structured innovation covariance needs p >= 2");
    BandedMatrix b(p, 1);
    for (std::size_t i = 0; i < p; ++i) {
        b.set(i, i, i == 0 ? 1.0 : 0.6);
        if (i + 1 < p) {
            b.set(i, i + 1, 0.8);
            b.set(i + 1, i, 0.8);
        }
    }
    const DenseMatrix bd = b.to_dense();
    return bd * bd.transpose();
}

TimeSeries simulate_var(const BandedVarModel& model, std::size_t n, Rng& rng, const SimulateOptions& opts) {
    if (!opts.allow_explosive && !is_stationary(model))
        throw NonStationaryError("simulate_var: model is not stationary");
    const std::size_t p = model.dim();
    const std::size_t d = model.order();
    std::optional<DenseMatrix> factor;
    if (model.sigma_eps() && !model.sigma_eps()->isIdentity(0.0)) factor = covariance_factor(*model.sigma_eps());

    const std::size_t steps = opts.burn_in + n;
    std::vector<Vector> history(d, Vector::Zero(static_cast<Eigen::Index>(p)));  // history[l] = y_{t-1-l}
    DenseMatrix out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n));
    Vector z(static_cast<Eigen::Index>(p));
    for (std::size_t t = 0; t < steps; ++t) {
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = opts.sampler(rng);
        Vector y = factor ? Vector(*factor * z) : z;
        for (std::size_t l = 0; l < d; ++l) y += model.coeff(l).multiply(history[l]);
        for (std::size_t l = d - 1; l > 0; --l) history[l] = history[l - 1];
        history[0] = y;
        if (t >= opts.burn_in) out.col(static_cast<Eigen::Index>(t - opts.burn_in)) = y;
    }
    if (!out.allFinite()) throw NumericalError("simulate_var: path diverged to non-finite values");
    return TimeSeries(std::move(out));
}

BandedVarModel generate_model(const SimConfig& cfg, const Rng& rng) {
    cfg.validate();
    Rng coeff_rng = rng.substream("coeffs");
    BandedMatrix a = cfg.setting == CoeffSetting::uniform_band
                         ? gen_coeff_uniform(cfg.p, cfg.k0, coeff_rng, cfg.target_norm)
                         : gen_coeff_mixture(cfg.p, cfg.k0, coeff_rng, cfg.target_norm);
    DenseMatrix sigma = cfg.sigma_kind == InnovationCovariance::identity
                            ? DenseMatrix::Identity(static_cast<Eigen::Index>(cfg.p), static_cast<Eigen::Index>(cfg.p))
                            : gen_sigma_eps_structured(cfg.p);
    return BandedVarModel({std::move(a)}, cfg.k0, std::move(sigma));
}

SimulatedData simulate(const SimConfig& cfg, const Rng& rng) {
    BandedVarModel model = generate_model(cfg, rng);
    Rng innov = rng.substream("innovations");
    SimulateOptions opts;
    opts.burn_in = cfg.burn_in;
    TimeSeries series = simulate_var(model, cfg.n, innov, opts);
    return {std::move(model), std::move(series)};
}

}  // namespace bandvar
