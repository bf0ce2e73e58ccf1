#include "bandvar/experiments.hpp"

#include "bandvar/autocov.hpp"
#include "bandvar/estimation.hpp"
#include "bandvar/forecast.hpp"
#include "bandvar/io.hpp"
#include "bandvar/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace bandvar::experiments {

namespace {

template <typename Body>
void for_each_rep(std::size_t reps, Execution exec, Body&& body) {
    if (exec == Execution::parallel) {
        const auto count = static_cast<long>(reps);
#pragma omp parallel for schedule(dynamic)
        for (long r = 0; r < count; ++r) body(static_cast<std::size_t>(r));
    } else {
        for (std::size_t r = 0; r < reps; ++r) body(r);
    }
}

SimConfig sim_config(const SelectionExperiment& e) {
    SimConfig cfg;
    cfg.p = e.p;
    cfg.n = e.n;
    cfg.k0 = e.k0;
    cfg.setting = e.setting;
    cfg.seed = e.seed;
    return cfg;
}

SelectionOptions selection_options(std::size_t max_bandwidth, std::optional<double> c_n, bool include_zero = false) {
    SelectionOptions opts;
    opts.max_bandwidth = max_bandwidth;
    opts.c_n = c_n;
    opts.include_zero = include_zero;
    opts.exec = Execution::serial;
    return opts;
}

std::string fmt(double v) { return io::format_number(v); }

}  // namespace

MeanSd mean_sd(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0};
}

Frequencies frequencies(const std::vector<std::size_t>& picks, std::size_t k0) {
    Frequencies f;
    if (picks.empty()) return f;
    for (auto k : picks) {
        if (k == k0) f.equal += 1.0;
        else if (k > k0) f.over += 1.0;
        else f.under += 1.0;
    }
    const double scale = 100.0 / static_cast<double>(picks.size());
    f.equal *= scale;
    f.over *= scale;
    f.under *= scale;
    return f;
}

SelectionOutcome run_selection(const SelectionExperiment& e, Execution exec) {
    const SimConfig cfg = sim_config(e);
    cfg.validate();
    SelectionOutcome out;
    out.marginal.assign(e.reps, 0);
    out.joint.assign(e.reps, 0);
    const Rng master(e.seed);
    for_each_rep(e.reps, exec, [&](std::size_t r) {
        const auto data = simulate(cfg, master.split(r));
        const auto opts = selection_options(e.max_bandwidth, e.c_n, e.include_zero);
        const auto grid = bandwidth_grid(e.n, e.p, opts);
        const double c_n = e.c_n.value_or(default_c_n(e.n));
        const auto surface = compute_rss_surface(data.series, 1, grid, Execution::serial);
        out.marginal[r] = select_from_rss(surface, c_n).k_hat;
        out.joint[r] = joint_from_rss(surface, c_n).k_tilde;
    });
    return out;
}

EstimationOutcome run_estimation(const SelectionExperiment& e, Execution exec) {
    const SimConfig cfg = sim_config(e);
    cfg.validate();
    EstimationOutcome out;
    out.k_hat.assign(e.reps, 0);
    for (auto* v : {&out.l1_est, &out.l2_est, &out.fro_est, &out.l1_true, &out.l2_true, &out.fro_true}) v->assign(e.reps, 0.0);
    const Rng master(e.seed);
    for_each_rep(e.reps, exec, [&](std::size_t r) {
        const auto data = simulate(cfg, master.split(r));
        const DenseMatrix truth = data.model.coeff(0).to_dense();
        const auto k_hat = select_bandwidth(data.series, 1, selection_options(e.max_bandwidth, e.c_n, e.include_zero)).k_hat;
        out.k_hat[r] = k_hat;
        const DenseMatrix est = fit_banded_var(data.series, k_hat, 1, false, Execution::serial).model.coeff(0).to_dense() - truth;
        const DenseMatrix orc = fit_banded_var(data.series, e.k0, 1, false, Execution::serial).model.coeff(0).to_dense() - truth;
        out.l1_est[r] = l1_norm(est);
        out.l2_est[r] = spectral_norm(est);
        out.fro_est[r] = frobenius_norm(est);
        out.l1_true[r] = l1_norm(orc);
        out.l2_true[r] = spectral_norm(orc);
        out.fro_true[r] = frobenius_norm(orc);
    });
    return out;
}

AutocovOutcome run_autocov(const AutocovExperiment& e, Execution exec) {
    SimConfig cfg;
    cfg.p = e.p;
    cfg.n = e.n;
    cfg.k0 = e.k0;
    cfg.setting = CoeffSetting::uniform_band;
    cfg.target_norm = e.target_norm;
    cfg.sigma_kind = InnovationCovariance::structured_bbt;
    cfg.seed = e.seed;
    cfg.validate();

    const std::size_t nl = e.lags.size();
    AutocovOutcome out;
    out.l1.assign(nl, {});
    out.spectral.assign(nl, {});
    out.selected_r.assign(nl, std::vector<double>(e.reps, 0.0));
    out.selected_t.assign(nl, std::vector<double>(e.reps, 0.0));
    for (auto* group : {&out.l1, &out.spectral})
        for (auto& errs : *group)
            for (auto* v : {&errs.banded, &errs.thresholded, &errs.sample}) v->assign(e.reps, 0.0);

    const Rng master(e.seed);
    for_each_rep(e.reps, exec, [&](std::size_t r) {
        const Rng rep_rng = master.split(r);
        const auto data = simulate(cfg, rep_rng);
        const DenseMatrix sigma0 = theoretical_autocov_var1(data.model, 0).matrix;
        const DenseMatrix a_t = data.model.coeff(0).to_dense().transpose();
        BootstrapOptions bopts;
        bopts.replicates = e.bootstrap_replicates;
        bopts.exec = Execution::serial;
        for (std::size_t li = 0; li < nl; ++li) {
            const std::size_t lag = e.lags[li];
            DenseMatrix truth = sigma0;
            for (std::size_t j = 0; j < lag; ++j) truth = truth * a_t;
            const DenseMatrix sample = sample_autocov(data.series, lag);
            const Rng boot = rep_rng.substream("bootstrap", lag);
            const auto band_risk = bootstrap_select_band(data.series, lag, default_band_grid(e.n, e.p), boot, bopts);
            const auto thr_risk =
                bootstrap_select_threshold(data.series, lag, default_threshold_grid(sample), boot, bopts);
            const DenseMatrix banded = band(sample, static_cast<std::size_t>(band_risk.selected()));
            const DenseMatrix thresholded = threshold(sample, thr_risk.selected());
            out.selected_r[li][r] = band_risk.selected();
            out.selected_t[li][r] = thr_risk.selected();
            out.l1[li].banded[r] = l1_norm(banded - truth);
            out.l1[li].thresholded[r] = l1_norm(thresholded - truth);
            out.l1[li].sample[r] = l1_norm(sample - truth);
            out.spectral[li].banded[r] = spectral_norm(banded - truth);
            out.spectral[li].thresholded[r] = spectral_norm(thresholded - truth);
            out.spectral[li].sample[r] = spectral_norm(sample - truth);
        }
    });
    return out;
}

std::vector<std::size_t> random_permutation(std::size_t p, Rng& rng) {
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = p; i > 1; --i) {
        const auto j = std::min(i - 1, static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i)));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

std::vector<std::size_t> local_permutation(std::size_t p, std::size_t group, Rng& rng) {
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (group < 2) return perm;
    for (std::size_t start = 0; start < p; start += group) {
        const std::size_t len = std::min(group, p - start);
        const auto block = random_permutation(len, rng);
        for (std::size_t m = 0; m < len; ++m) perm[start + m] = start + block[m];
    }
    return perm;
}

std::vector<OrderingResult> run_ordering(const OrderingExperiment& e, Execution exec) {
    SimConfig cfg;
    cfg.p = e.p;
    cfg.n = e.n + 2;
    cfg.k0 = e.k0;
    cfg.setting = CoeffSetting::uniform_band;
    cfg.seed = e.seed;
    cfg.validate();

    const std::vector<std::string> names{"true", "local", "random1", "random2"};
    std::vector<OrderingResult> results(names.size());
    for (std::size_t o = 0; o < names.size(); ++o) {
        results[o].name = names[o];
        for (auto* v : {&results[o].total_bic, &results[o].k_hat, &results[o].one_step, &results[o].two_step})
            v->assign(e.reps, 0.0);
    }

    const Rng master(e.seed);
    for_each_rep(e.reps, exec, [&](std::size_t r) {
        const Rng rep_rng = master.split(r);
        const auto data = simulate(cfg, rep_rng);
        Rng perm_rng = rep_rng.substream("orderings");
        std::vector<std::vector<std::size_t>> perms;
        perms.emplace_back(e.p);
        std::iota(perms[0].begin(), perms[0].end(), std::size_t{0});
        perms.push_back(local_permutation(e.p, e.group, perm_rng));
        perms.push_back(random_permutation(e.p, perm_rng));
        perms.push_back(random_permutation(e.p, perm_rng));

        const auto opts = selection_options(e.max_bandwidth, std::nullopt, e.include_zero);
        for (std::size_t o = 0; o < perms.size(); ++o) {
            const TimeSeries full = data.series.permuted(perms[o]);
            const TimeSeries train = full.head(e.n);
            const auto score = ordering_score(train, std::vector<std::size_t>(perms[0]), 1, opts);
            const auto fit = fit_banded_var(train, score.k_hat, 1, false, Execution::serial);
            const DenseMatrix pred = predict(fit.model, train, 2);
            const auto n = static_cast<Eigen::Index>(e.n);
            results[o].total_bic[r] = score.total_bic;
            results[o].k_hat[r] = static_cast<double>(score.k_hat);
            results[o].one_step[r] = (full.values.col(n) - pred.col(0)).cwiseAbs().mean();
            results[o].two_step[r] = (full.values.col(n + 1) - pred.col(1)).cwiseAbs().mean();
        }
    });
    return results;
}

void write_frequency_header(std::ostream& out) {
    out << "p,k0,n,reps,setting_i_eq,setting_i_gt,setting_i_lt,setting_ii_eq,setting_ii_gt,setting_ii_lt\n";
}

void write_frequency_row(std::ostream& out, std::size_t p, std::size_t k0, std::size_t n, std::size_t reps,
                         const Frequencies& uniform, const Frequencies& mixture) {
    out << p << ',' << k0 << ',' << n << ',' << reps << ',' << fmt(uniform.equal) << ',' << fmt(uniform.over) << ','
        << fmt(uniform.under) << ',' << fmt(mixture.equal) << ',' << fmt(mixture.over) << ',' << fmt(mixture.under)
        << '\n';
}

void write_estimation_header(std::ostream& out) {
    out << "p,k0,n,reps,est_l1_mean,est_l1_sd,est_l2_mean,est_l2_sd,true_l1_mean,true_l1_sd,true_l2_mean,true_l2_sd\n";
}

void write_estimation_row(std::ostream& out, std::size_t p, std::size_t k0, std::size_t n, std::size_t reps,
                          const EstimationOutcome& o) {
    out << p << ',' << k0 << ',' << n << ',' << reps;
    for (const auto* v : {&o.l1_est, &o.l2_est, &o.l1_true, &o.l2_true}) {
        const auto s = mean_sd(*v);
        out << ',' << fmt(s.mean) << ',' << fmt(s.sd);
    }
    out << '\n';
}

void write_autocov_table(std::ostream& out, const AutocovExperiment& e, const AutocovOutcome& o) {
    out << "p,n,reps,norm,lag,banding_mean,banding_sd,thresholding_mean,thresholding_sd,sample_mean,sample_sd\n";
    const std::pair<const char*, const std::vector<AutocovErrors>*> groups[] = {{"l1", &o.l1}, {"spectral", &o.spectral}};
    for (const auto& [name, group] : groups) {
        for (std::size_t li = 0; li < e.lags.size(); ++li) {
            const auto& errs = (*group)[li];
            out << e.p << ',' << e.n << ',' << e.reps << ',' << name << ',' << e.lags[li];
            for (const auto* v : {&errs.banded, &errs.thresholded, &errs.sample}) {
                const auto s = mean_sd(*v);
                out << ',' << fmt(s.mean) << ',' << fmt(s.sd);
            }
            out << '\n';
        }
    }
}

void write_ordering_table(std::ostream& out, const std::vector<OrderingResult>& results) {
    out << "ordering,bic_mean,bic_sd,k_hat_mean,k_hat_sd,one_step_mean,one_step_sd,two_step_mean,two_step_sd\n";
    for (const auto& r : results) {
        out << r.name;
        for (const auto* v : {&r.total_bic, &r.k_hat, &r.one_step, &r.two_step}) {
            const auto s = mean_sd(*v);
            out << ',' << fmt(s.mean) << ',' << fmt(s.sd);
        }
        out << '\n';
    }
}

}  // namespace bandvar::experiments
