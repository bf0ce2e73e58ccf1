// bandvar: command-line front end for the banded VAR library.
//
// Exit codes: 0 success, 1 usage or parse error, 2 numerical failure.

#include "bandvar/autocov.hpp"
#include "bandvar/errors.hpp"
#include "bandvar/estimation.hpp"
#include "bandvar/experiments.hpp"
#include "bandvar/forecast.hpp"
#include "bandvar/io.hpp"
#include "bandvar/parallel.hpp"
#include "bandvar/selection.hpp"
#include "bandvar/simulate.hpp"
#include "bandvar/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bandvar;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Global {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string manifest;
};

// Collects what a run needs to be repeated: flags, seed, version, outputs.
class Manifest {
public:
    Manifest(std::string command, const Global& g) : started_(utc_now()) {
        doc_["schema_version"] = io::kSchemaVersion;
        doc_["command"] = std::move(command);
        doc_["version"] = kVersion;
        doc_["seed"] = g.seed;
        doc_["config"] = json::object();
        doc_["outputs"] = json::array();
    }

    json& config() { return doc_["config"]; }
    void output(const std::string& path) {
        if (!path.empty() && path != "-") doc_["outputs"].push_back(path);
    }

    void write(const std::string& path) {
        if (path.empty()) return;
        doc_["started"] = started_;
        doc_["finished"] = utc_now();
        io::write_json_file(path, doc_);
    }

private:
    json doc_;
    std::string started_;
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_text_file(path, text);
    }
}

// Explicit --manifest wins; otherwise it sits next to the main output.
std::string manifest_path(const Global& g, const std::string& out) {
    if (!g.manifest.empty()) return g.manifest;
    if (out.empty() || out == "-") return {};
    return out + ".manifest.json";
}

struct SelectionFlags {
    std::optional<std::size_t> max_bandwidth;
    std::string c_n = "loglog";
    bool include_zero = false;

    void add(CLI::App* cmd) {
        cmd->add_option("--K", max_bandwidth, "largest trial bandwidth (default floor(sqrt(n)))");
        cmd->add_option("--Cn", c_n, "penalty constant: 'loglog' or a positive number")->capture_default_str();
        cmd->add_flag("--include-zero", include_zero, "also try bandwidth 0");
    }

    SelectionOptions options() const {
        SelectionOptions o;
        o.max_bandwidth = max_bandwidth;
        o.include_zero = include_zero;
        if (c_n != "loglog") {
            double v = 0.0;
            std::istringstream is(c_n);
            if (!(is >> v) || !is.eof() || !(v > 0.0)) throw UsageError("--Cn must be 'loglog' or a positive number");
            o.c_n = v;
        }
        return o;
    }

    void describe(json& j) const {
        j["K"] = max_bandwidth ? json(*max_bandwidth) : json(nullptr);
        j["Cn"] = c_n;
        j["include_zero"] = include_zero;
    }
};

// ---------------------------------------------------------------- simulate

struct SimulateCmd {
    SimConfig cfg;
    std::string setting = "uniform";
    std::string sigma = "identity";
    std::optional<double> norm;
    std::string out_dir;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("simulate", "simulate a banded VAR(1) and write data, truth and manifest");
        c->add_option("--p", cfg.p, "number of series")->capture_default_str();
        c->add_option("--n", cfg.n, "series length")->capture_default_str();
        c->add_option("--k0", cfg.k0, "true bandwidth")->capture_default_str();
        c->add_option("--setting", setting, "uniform | mixture")->capture_default_str();
        c->add_option("--norm", norm, "fix ||A||_2 (default: drawn from U[0.3, 1))");
        c->add_option("--sigma", sigma, "innovation covariance: identity | bbt")->capture_default_str();
        c->add_option("--burn-in", cfg.burn_in, "discarded warm-up steps")->capture_default_str();
        c->add_option("--out-dir", out_dir, "directory for data.csv, truth.json, manifest.json")->required();
    }

    void run(const Global& g) {
        cfg.seed = g.seed;
        cfg.setting = parse_setting(setting);
        cfg.target_norm = norm;
        if (sigma == "identity") {
            cfg.sigma_kind = InnovationCovariance::identity;
        } else if (sigma == "bbt") {
            cfg.sigma_kind = InnovationCovariance::structured_bbt;
        } else {
            throw UsageError("--sigma must be identity or bbt");
        }
        cfg.validate();

        const SimulatedData sim = simulate(cfg);
        fs::create_directories(out_dir);
        const std::string data = (fs::path(out_dir) / "data.csv").string();
        const std::string truth = (fs::path(out_dir) / "truth.json").string();
        io::write_series_csv_file(data, sim.series);
        io::write_json_file(truth, io::model_to_json(sim.model));

        Manifest m("simulate", g);
        m.config() = {{"p", cfg.p}, {"n", cfg.n}, {"k0", cfg.k0}, {"setting", to_string(cfg.setting)},
                      {"norm", norm ? json(*norm) : json(nullptr)}, {"sigma", sigma}, {"burn_in", cfg.burn_in}};
        m.output(data);
        m.output(truth);
        m.write(g.manifest.empty() ? (fs::path(out_dir) / "manifest.json").string() : g.manifest);
        std::cout << "wrote " << data << " (" << cfg.n << " x " << cfg.p << ")\n";
    }
};

// ---------------------------------------------------------------- fit

struct FitCmd {
    std::string data;
    std::optional<std::size_t> k;
    std::size_t d = 1;
    bool demean = false;
    SelectionFlags sel;
    std::string out;
    std::string report;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("fit", "fit a banded VAR(d) by row-wise least squares");
        c->add_option("--data", data, "series CSV")->required();
        c->add_option("--k", k, "bandwidth (default: selected by the marginal criterion)");
        c->add_option("--d", d, "autoregressive order")->capture_default_str();
        c->add_flag("--demean", demean, "remove series means before fitting");
        sel.add(c);
        c->add_option("--out", out, "model JSON (default stdout)");
        c->add_option("--report", report, "fit report JSON with RSS and per-row coefficients");
    }

    void run(const Global& g) {
        const TimeSeries ts = io::read_series_csv_file(data);
        std::size_t bw = 0;
        if (k) {
            bw = *k;
        } else {
            const SelectionOptions o = sel.options();
            bw = select_bandwidth(demean ? demeaned(ts).first : ts, d, o).k_hat;
        }
        const FitReport r = fit_banded_var(ts, bw, d, demean);
        emit(out, io::model_to_json(r.model).dump(2) + "\n");
        if (!report.empty()) io::write_json_file(report, io::fit_report_to_json(r));

        Manifest m("fit", g);
        m.config() = {{"data", data}, {"k", bw}, {"k_selected", !k.has_value()}, {"d", d}, {"demean", demean}};
        sel.describe(m.config());
        m.output(out);
        m.output(report);
        m.write(manifest_path(g, out));
    }
};

// ---------------------------------------------------------------- select

struct SelectCmd {
    std::string data;
    std::size_t d = 1;
    std::optional<std::size_t> max_order;
    bool joint = false;
    SelectionFlags sel;
    std::string out;
    std::string csv;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("select", "select the bandwidth by the row-wise information criterion");
        c->add_option("--data", data, "series CSV")->required();
        c->add_option("--d", d, "autoregressive order (known)")->capture_default_str();
        c->add_option("--max-order", max_order, "select the order jointly over 1..L instead");
        c->add_flag("--joint", joint, "also report the whole-model criterion");
        sel.add(c);
        c->add_option("--out", out, "selection trace JSON");
        c->add_option("--csv", csv, "per-row selections CSV");
    }

    void run(const Global& g) {
        const TimeSeries ts = io::read_series_csv_file(data);
        const SelectionOptions o = sel.options();
        const SelectionTrace t = max_order ? select_bandwidth_and_order(ts, *max_order, o) : select_bandwidth(ts, d, o);
        json doc = io::selection_to_json(t);
        std::cout << "k_hat = " << t.k_hat << "\n";
        if (t.d_hat) std::cout << "d_hat = " << *t.d_hat << "\n";
        if (joint) {
            const JointSelection js = joint_bic_select(ts, t.d_hat.value_or(d), o);
            std::cout << "k_tilde = " << js.k_tilde << "\n";
            doc["joint"] = io::joint_to_json(js);
        }
        if (!out.empty()) io::write_json_file(out, doc);
        if (!csv.empty()) {
            std::ostringstream os;
            io::write_selection_csv(os, t);
            io::write_text_file(csv, os.str());
        }

        Manifest m("select", g);
        m.config() = {{"data", data}, {"d", d}, {"max_order", max_order ? json(*max_order) : json(nullptr)}, {"joint", joint}};
        sel.describe(m.config());
        m.output(out);
        m.output(csv);
        m.write(manifest_path(g, out.empty() ? csv : out));
    }
};

// ---------------------------------------------------------------- autocov

struct AutocovCmd {
    std::string data;
    std::size_t lag = 0;
    std::string method = "banded";
    std::optional<std::size_t> r;
    std::optional<double> t;
    std::size_t q = 100;
    std::string out;
    std::string sidecar;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("autocov", "estimate a lag-j autocovariance matrix");
        c->add_option("--data", data, "series CSV")->required();
        c->add_option("--lag", lag, "lag j")->capture_default_str();
        c->add_option("--method", method, "sample | banded | thresholded")->capture_default_str();
        c->add_option("--r", r, "fixed banding parameter (default: bootstrap)");
        c->add_option("--t", t, "fixed threshold (default: bootstrap)");
        c->add_option("--q", q, "bootstrap replicates")->capture_default_str();
        c->add_option("--out", out, "matrix CSV (default stdout)");
        c->add_option("--sidecar", sidecar, "method and tuning JSON (default <out>.json)");
    }

    void run(const Global& g) {
        const TimeSeries ts = io::read_series_csv_file(data);
        const DenseMatrix s = sample_autocov(ts, lag);
        AutocovEstimate est;
        est.lag = lag;
        est.method = method;
        est.tuning_source = "none";
        std::optional<BootstrapRisk> risk;
        const Rng boot = Rng(g.seed).substream("bootstrap", lag);
        BootstrapOptions bo;
        bo.replicates = q;
        if (q == 0) throw UsageError("--q must be positive");

        if (method == "sample") {
            est.matrix = s;
        } else if (method == "banded") {
            if (r) {
                est.tuning = static_cast<double>(*r);
                est.tuning_source = "fixed";
            } else {
                risk = bootstrap_select_band(ts, lag, default_band_grid(ts.length(), ts.dim()), boot, bo);
                est.tuning = risk->selected();
                est.tuning_source = "bootstrap";
            }
            est.matrix = band(s, static_cast<std::size_t>(est.tuning));
        } else if (method == "thresholded") {
            if (t) {
                est.tuning = *t;
                est.tuning_source = "fixed";
            } else {
                risk = bootstrap_select_threshold(ts, lag, default_threshold_grid(s), boot, bo);
                est.tuning = risk->selected();
                est.tuning_source = "bootstrap";
            }
            est.matrix = threshold(s, est.tuning);
        } else {
            throw UsageError("--method must be sample, banded or thresholded");
        }

        std::ostringstream os;
        io::write_matrix_csv(os, est.matrix);
        emit(out, os.str());
        json side = io::autocov_sidecar(est);
        if (risk) side["bootstrap"] = io::bootstrap_to_json(*risk);
        std::string side_path = sidecar;
        if (side_path.empty() && !out.empty() && out != "-") side_path = out + ".json";
        if (!side_path.empty()) io::write_json_file(side_path, side);
        else std::cerr << side.dump() << "\n";

        Manifest m("autocov", g);
        m.config() = {{"data", data}, {"lag", lag}, {"method", method}, {"r", r ? json(*r) : json(nullptr)},
                      {"t", t ? json(*t) : json(nullptr)}, {"q", q}};
        m.output(out);
        m.output(side_path);
        m.write(manifest_path(g, out));
    }
};

// ---------------------------------------------------------------- forecast

struct ForecastCmd {
    std::string data;
    std::string model;
    bool fitted = false;
    std::size_t holdout = 10;
    std::size_t horizon = 1;
    std::size_t d = 1;
    std::optional<std::size_t> k;
    bool refit = false;
    bool no_demean = false;
    std::string metric = "abs";
    std::size_t period = 0;
    SelectionFlags sel;
    std::string out;
    std::string summary;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("forecast", "post-sample forecast evaluation, or in-sample fitted values");
        c->add_option("--data", data, "series CSV")->required();
        c->add_option("--model", model, "model JSON; with --fitted, the model to apply");
        c->add_flag("--fitted", fitted, "write one-step in-sample fitted values of --model");
        c->add_option("--holdout", holdout, "number of post-sample time points")->capture_default_str();
        c->add_option("--horizon", horizon, "largest forecast step")->capture_default_str();
        c->add_option("--d", d, "autoregressive order")->capture_default_str();
        c->add_option("--k", k, "bandwidth (default: selected)");
        c->add_flag("--refit", refit, "refit at every origin");
        c->add_flag("--no-demean", no_demean, "fit without removing series means");
        c->add_option("--metric", metric, "abs | sq")->capture_default_str();
        c->add_option("--period", period, "remove per-phase means of this period before fitting (0 = off)")
            ->capture_default_str();
        sel.add(c);
        c->add_option("--out", out, "CSV output (default stdout)");
        c->add_option("--summary", summary, "per-horizon summary JSON");
    }

    void run(const Global& g) {
        const TimeSeries ts = io::read_series_csv_file(data);
        Manifest m("forecast", g);
        m.config() = {{"data", data}, {"model", model}, {"fitted", fitted}};

        if (fitted) {
            if (model.empty()) throw UsageError("--fitted needs --model");
            const BandedVarModel bm = io::model_from_json(io::read_json_file(model));
            const DenseMatrix f = one_step_fitted(bm, ts);
            std::ostringstream os;
            io::write_series_csv(os, TimeSeries(f, ts.labels));
            emit(out, os.str());
        } else {
            if (!model.empty()) throw UsageError("--model is only used with --fitted; evaluation fits its own model");
            FitSpec spec;
            spec.order = d;
            spec.bandwidth = k;
            spec.selection = sel.options();
            spec.demean = !no_demean;
            spec.refit = refit;
            ErrorMetric em = ErrorMetric::absolute;
            if (metric == "sq") em = ErrorMetric::squared;
            else if (metric != "abs") throw UsageError("--metric must be abs or sq");

            ForecastReport rep;
            if (period > 0) {
                // Errors are unchanged by the seasonal shift; predictions are
                // reported on the original scale.
                const Deseasonalized ds = deseasonalize(ts, period);
                rep = rolling_evaluation(ds.residual, spec, holdout, horizon, em);
                for (std::size_t h = 0; h < rep.predictions.size(); ++h)
                    for (std::size_t c = 0; c < rep.origins.size(); ++c) {
                        const auto col = static_cast<Eigen::Index>(c);
                        rep.predictions[h].col(col) += ds.seasonal.col(static_cast<Eigen::Index>((rep.origins[c] + h) % period));
                    }
            } else {
                rep = rolling_evaluation(ts, spec, holdout, horizon, em);
            }
            std::ostringstream os;
            io::write_forecast_csv(os, rep, ts.labels);
            emit(out, os.str());
            const json sj = io::forecast_summary_to_json(rep);
            if (!summary.empty()) io::write_json_file(summary, sj);
            for (std::size_t h = 0; h < rep.summary.size(); ++h)
                std::cerr << "step " << h + 1 << ": mean " << io::format_number(rep.summary[h].mean) << " sd "
                          << io::format_number(rep.summary[h].sd) << "\n";
            m.config().update({{"holdout", holdout}, {"horizon", horizon}, {"d", d}, {"k", k ? json(*k) : json(nullptr)},
                               {"refit", refit}, {"demean", !no_demean}, {"metric", metric},
                               {"period", period}});
            sel.describe(m.config());
        }
        m.output(out);
        m.output(summary);
        m.write(manifest_path(g, out));
    }
};

// ---------------------------------------------------------------- order

struct OrderCmd {
    std::string data;
    std::string coords;
    std::vector<std::string> strategies{"ns", "we", "nwse", "swne"};
    std::size_t d = 1;
    SelectionFlags sel;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("order", "score coordinate-based orderings of the series");
        c->add_option("--data", data, "series CSV")->required();
        c->add_option("--coords", coords, "label,x,y CSV")->required();
        c->add_option("--strategy", strategies, "ns, we, nwse, swne, anchor:i")->delimiter(',')->capture_default_str();
        c->add_option("--d", d, "autoregressive order")->capture_default_str();
        sel.add(c);
        c->add_option("--out", out, "table CSV (default stdout)");
    }

    // Coordinates are matched to series by label; a file with no matching
    // labels but the right row count is taken positionally.
    static std::vector<std::array<double, 2>> align(const TimeSeries& ts, const io::LabelledPoints& pts) {
        std::map<std::string, std::array<double, 2>> by_label;
        for (std::size_t i = 0; i < pts.labels.size(); ++i) by_label.emplace(pts.labels[i], pts.coords[i]);
        std::vector<std::array<double, 2>> xy;
        std::size_t found = 0;
        for (const auto& l : ts.labels) {
            auto it = by_label.find(l);
            if (it != by_label.end()) {
                xy.push_back(it->second);
                ++found;
            }
        }
        if (found == ts.dim()) return xy;
        if (found == 0 && pts.coords.size() == ts.dim()) return pts.coords;
        throw UsageError("coordinates do not cover every series label");
    }

    void run(const Global& g) {
        const TimeSeries ts = io::read_series_csv_file(data);
        const auto xy = align(ts, io::read_coords_csv_file(coords));
        const SelectionOptions o = sel.options();

        std::ostringstream os;
        os << "ordering,k_hat,total_bic\n";
        for (const auto& cand : ordering_candidates(xy, strategies)) {
            const OrderingScore s = ordering_score(ts, cand.perm, d, o);
            os << io::quote_csv_field(cand.name) << ',' << s.k_hat << ',' << io::format_number(s.total_bic) << '\n';
        }
        emit(out, os.str());

        Manifest m("order", g);
        m.config() = {{"data", data}, {"coords", coords}, {"strategies", strategies}, {"d", d}};
        sel.describe(m.config());
        m.output(out);
        m.write(manifest_path(g, out));
    }
};

// ---------------------------------------------------------------- bench

struct BenchCmd {
    std::string table;
    std::size_t reps = 100;
    std::size_t p = 100;
    std::size_t n = 200;
    std::optional<std::size_t> k0;
    std::size_t max_bandwidth = 15;
    std::size_t q = 100;
    std::string setting = "uniform";
    bool include_zero = false;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("bench", "rerun a simulation table");
        c->add_option("--table", table, "t1 | t2 | t3 | t4 | t7")->required();
        c->add_option("--reps", reps, "replications")->capture_default_str();
        c->add_option("--p", p, "number of series")->capture_default_str();
        c->add_option("--n", n, "series length")->capture_default_str();
        c->add_option("--k0", k0, "true bandwidth (default 1; 3 for t4, 2 for t7)");
        c->add_option("--K", max_bandwidth, "largest trial bandwidth")->capture_default_str();
        c->add_option("--q", q, "bootstrap replicates (t4)")->capture_default_str();
        c->add_option("--setting", setting, "coefficient setting for t3")->capture_default_str();
        c->add_flag("--include-zero", include_zero, "also try bandwidth 0 (t1 - t3)");
        c->add_option("--out", out, "table CSV (default stdout)");
    }

    void run(const Global& g) {
        if (reps == 0) throw UsageError("--reps must be at least 1");
        std::ostringstream os;
        std::size_t true_k = k0.value_or(1);

        if (table == "t1" || table == "t2") {
            experiments::SelectionExperiment e;
            e.p = p;
            e.n = n;
            e.k0 = true_k;
            e.reps = reps;
            e.max_bandwidth = max_bandwidth;
            e.include_zero = include_zero;
            e.seed = g.seed;
            e.setting = CoeffSetting::uniform_band;
            const auto a = experiments::run_selection(e);
            e.setting = CoeffSetting::sparse_mixture;
            const auto b = experiments::run_selection(e);
            const bool marginal = table == "t1";
            experiments::write_frequency_header(os);
            experiments::write_frequency_row(os, p, true_k, n, reps,
                                             experiments::frequencies(marginal ? a.marginal : a.joint, true_k),
                                             experiments::frequencies(marginal ? b.marginal : b.joint, true_k));
        } else if (table == "t3") {
            experiments::SelectionExperiment e;
            e.p = p;
            e.n = n;
            e.k0 = true_k;
            e.reps = reps;
            e.max_bandwidth = max_bandwidth;
            e.include_zero = include_zero;
            e.seed = g.seed;
            e.setting = parse_setting(setting);
            experiments::write_estimation_header(os);
            experiments::write_estimation_row(os, p, true_k, n, reps, experiments::run_estimation(e));
        } else if (table == "t4") {
            experiments::AutocovExperiment e;
            e.p = p;
            e.n = n;
            e.k0 = true_k = k0.value_or(3);
            e.reps = reps;
            e.bootstrap_replicates = q;
            e.seed = g.seed;
            experiments::write_autocov_table(os, e, experiments::run_autocov(e));
        } else if (table == "t7") {
            experiments::OrderingExperiment e;
            e.p = p;
            e.n = n;
            e.k0 = true_k = k0.value_or(2);
            e.reps = reps;
            e.max_bandwidth = max_bandwidth;
            e.seed = g.seed;
            experiments::write_ordering_table(os, experiments::run_ordering(e));
        } else {
            throw UsageError("unknown table '" + table + "' (expected t1, t2, t3, t4 or t7)");
        }
        emit(out, os.str());

        Manifest m("bench", g);
        m.config() = {{"table", table}, {"reps", reps}, {"p", p}, {"n", n}, {"k0", true_k},
                      {"K", max_bandwidth}, {"q", q}, {"setting", setting}};
        m.output(out);
        m.write(manifest_path(g, out));
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Banded vector autoregressions: simulation, fitting, selection and forecasting"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Global g;
    app.add_option("--seed", g.seed, "master seed for every random stream")->capture_default_str();
    app.add_option("--threads", g.threads, "cap on worker threads (0 = OpenMP default)");
    app.add_option("--manifest", g.manifest, "manifest path (default: next to the main output)");

    SimulateCmd simulate_cmd;
    FitCmd fit_cmd;
    SelectCmd select_cmd;
    AutocovCmd autocov_cmd;
    ForecastCmd forecast_cmd;
    OrderCmd order_cmd;
    BenchCmd bench_cmd;
    simulate_cmd.add(app);
    fit_cmd.add(app);
    select_cmd.add(app);
    autocov_cmd.add(app);
    forecast_cmd.add(app);
    order_cmd.add(app);
    bench_cmd.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (g.threads < 0) {
        std::cerr << "error: --threads must be non-negative\n";
        return 1;
    }
    if (g.threads > 0) set_max_threads(g.threads);

    try {
        if (app.got_subcommand("simulate")) simulate_cmd.run(g);
        else if (app.got_subcommand("fit")) fit_cmd.run(g);
        else if (app.got_subcommand("select")) select_cmd.run(g);
        else if (app.got_subcommand("autocov")) autocov_cmd.run(g);
        else if (app.got_subcommand("forecast")) forecast_cmd.run(g);
        else if (app.got_subcommand("order")) order_cmd.run(g);
        else if (app.got_subcommand("bench")) bench_cmd.run(g);
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
