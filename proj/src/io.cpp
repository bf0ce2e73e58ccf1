#include "bandvar/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bandvar::io {

using nlohmann::json;

namespace {

bool parse_double(const std::string& field, double& out) {
    std::size_t start = field.find_first_not_of(" \t");
    std::size_t end = field.find_last_not_of(" \t\r");
    if (start == std::string::npos) return false;
    const std::string s = field.substr(start, end - start + 1);
    errno = 0;
    char* stop = nullptr;
    out = std::strtod(s.c_str(), &stop);
    return stop == s.c_str() + s.size() && errno != ERANGE && std::isfinite(out);
}

double require_double(const std::string& field, std::size_t line_no, std::size_t column) {
    double v = 0.0;
    if (!parse_double(field, v)) {
        std::ostringstream os;
        os << "line " << line_no << ", column " << column + 1 << ": '" << field << "' is not a finite number";
        throw ParseError(os.str(), line_no);
    }
    return v;
}

json matrix_to_json(const DenseMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

DenseMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const char* what) {
    if (!j.is_array() || j.size() != rows) throw std::invalid_argument(std::string(what) + ": wrong row count");
    DenseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument(std::string(what) + ": wrong column count");
        for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = j[i][c].get<double>();
    }
    return m;
}

json vector_to_json(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            was_quoted = false;
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field", line_no);
    fields.push_back(std::move(cur));
    return fields;
}

std::string quote_csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

TimeSeries read_series_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        labels = split_csv_record(line, line_no);
        break;
    }
    if (labels.empty()) throw ParseError("empty CSV: missing header row", line_no == 0 ? 1 : line_no);
    const std::size_t p = labels.size();
    std::vector<double> flat;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_csv_record(line, line_no);
        if (fields.size() != p) {
            std::ostringstream os;
            os << "line " << line_no << ": expected " << p << " fields, found " << fields.size();
            throw ParseError(os.str(), line_no);
        }
        for (std::size_t c = 0; c < p; ++c) flat.push_back(require_double(fields[c], line_no, c));
        ++n;
    }
    if (n == 0) throw ParseError("CSV has a header but no data rows", line_no);
    DenseMatrix values(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n));
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t i = 0; i < p; ++i) values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = flat[t * p + i];
    return TimeSeries(std::move(values), std::move(labels));
}

TimeSeries read_series_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_series_csv(in);
}

void write_series_csv(std::ostream& out, const TimeSeries& ts) {
    for (std::size_t i = 0; i < ts.dim(); ++i) out << (i ? "," : "") << quote_csv_field(ts.labels[i]);
    out << '\n';
    for (Eigen::Index t = 0; t < ts.values.cols(); ++t) {
        for (Eigen::Index i = 0; i < ts.values.rows(); ++i) out << (i ? "," : "") << format_number(ts.values(i, t));
        out << '\n';
    }
}

void write_series_csv_file(const std::string& path, const TimeSeries& ts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_series_csv(out, ts);
}

LabelledPoints read_coords_csv(std::istream& in) {
    LabelledPoints pts;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto f = split_csv_record(line, line_no);
        if (f.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected label,x,y", line_no);
        double probe = 0.0;
        if (first && !parse_double(f[1], probe)) {
            first = false;
            continue;
        }
        first = false;
        pts.labels.push_back(f[0]);
        pts.coords.push_back({require_double(f[1], line_no, 1), require_double(f[2], line_no, 2)});
    }
    if (pts.coords.empty()) throw ParseError("coordinate file has no rows", line_no);
    return pts;
}

LabelledPoints read_coords_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_coords_csv(in);
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_number(m(i, j));
        out << '\n';
    }
}

DenseMatrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto f = split_csv_record(line, line_no);
        if (!rows.empty() && f.size() != rows.front().size())
            throw ParseError("line " + std::to_string(line_no) + ": ragged matrix row", line_no);
        std::vector<double> r;
        for (std::size_t c = 0; c < f.size(); ++c) r.push_back(require_double(f[c], line_no, c));
        rows.push_back(std::move(r));
    }
    DenseMatrix m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

json model_to_json(const BandedVarModel& m) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["p"] = m.dim();
    j["d"] = m.order();
    j["k0"] = m.bandwidth();
    json coeffs = json::array();
    for (const auto& a : m.coeffs()) coeffs.push_back(matrix_to_json(a.to_dense()));
    j["coeffs"] = std::move(coeffs);
    if (m.sigma_eps()) j["sigma_eps"] = matrix_to_json(*m.sigma_eps());
    if (m.mean()) j["mean"] = vector_to_json(*m.mean());
    return j;
}

BandedVarModel model_from_json(const json& j) {
    if (j.contains("schema_version") && j.at("schema_version").get<int>() > kSchemaVersion)
        throw std::invalid_argument("model JSON: unsupported schema_version");
    const auto p = j.at("p").get<std::size_t>();
    const auto d = j.at("d").get<std::size_t>();
    const auto k0 = j.at("k0").get<std::size_t>();
    if (p == 0 || d == 0 || k0 >= p) throw std::invalid_argument("model JSON: invalid p, d or k0");
    const auto& cj = j.at("coeffs");
    if (!cj.is_array() || cj.size() != d) throw std::invalid_argument("model JSON: need d coefficient matrices");
    std::vector<BandedMatrix> coeffs;
    for (std::size_t l = 0; l < d; ++l) {
        DenseMatrix a = matrix_from_json(cj[l], p, p, "model JSON coeffs");
        if (observed_bandwidth(a) > k0)
            throw std::invalid_argument("model JSON: coefficient " + std::to_string(l + 1) + " has entries outside the band");
        coeffs.push_back(BandedMatrix::from_dense(a, k0));
    }
    std::optional<DenseMatrix> sigma;
    if (j.contains("sigma_eps") && !j.at("sigma_eps").is_null()) sigma = matrix_from_json(j.at("sigma_eps"), p, p, "model JSON sigma_eps");
    std::optional<Vector> mean;
    if (j.contains("mean") && !j.at("mean").is_null()) {
        const auto& mj = j.at("mean");
        if (!mj.is_array() || mj.size() != p) throw std::invalid_argument("model JSON: mean must have length p");
        Vector v(static_cast<Eigen::Index>(p));
        for (std::size_t i = 0; i < p; ++i) v[static_cast<Eigen::Index>(i)] = mj[i].get<double>();
        mean = std::move(v);
    }
    return BandedVarModel(std::move(coeffs), k0, std::move(sigma), std::move(mean));
}

json fit_report_to_json(const FitReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["model"] = model_to_json(r.model);
    j["rss"] = r.rss;
    j["sigma_hat"] = r.sigma_hat;
    json betas = json::array();
    for (const auto& b : r.betas) betas.push_back(vector_to_json(b));
    j["betas"] = std::move(betas);
    return j;
}

json selection_to_json(const SelectionTrace& t) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["k_grid"] = t.k_grid;
    j["order_grid"] = t.order_grid;
    j["c_n"] = t.c_n;
    j["k_hat"] = t.k_hat;
    j["d_hat"] = t.d_hat ? json(*t.d_hat) : json(nullptr);
    j["k_per_row"] = t.k_per_row;
    j["d_per_row"] = t.d_per_row;
    j["bic"] = matrix_to_json(t.bic);
    j["total_bic"] = t.total_at_selection();
    return j;
}

void write_selection_csv(std::ostream& out, const SelectionTrace& t) {
    out << (t.d_hat ? "row,k_hat,d_hat\n" : "row,k_hat\n");
    for (std::size_t i = 0; i < t.k_per_row.size(); ++i) {
        out << i << ',' << t.k_per_row[i];
        if (t.d_hat) out << ',' << t.d_per_row[i];
        out << '\n';
    }
}

json joint_to_json(const JointSelection& s) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["k_tilde"] = s.k_tilde;
    j["k_grid"] = s.k_grid;
    j["criterion"] = s.criterion;
    return j;
}

json bootstrap_to_json(const BootstrapRisk& r) {
    json j;
    j["method"] = r.method == Regularizer::band ? "banded" : "thresholded";
    j["grid"] = r.grid;
    j["risk"] = r.risk;
    j["replicates"] = r.replicates;
    j["selected"] = r.selected();
    return j;
}

json autocov_sidecar(const AutocovEstimate& e) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["method"] = e.method;
    j["lag"] = e.lag;
    j["tuning"] = {{"value", e.tuning}, {"source", e.tuning_source}};
    return j;
}

json forecast_summary_to_json(const ForecastReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["horizon"] = r.horizon;
    j["holdout"] = r.holdout;
    j["bandwidth"] = r.bandwidth;
    json s = json::array();
    for (std::size_t h = 0; h < r.summary.size(); ++h)
        s.push_back({{"step", h + 1}, {"mean", r.summary[h].mean}, {"sd", r.summary[h].sd}, {"count", r.summary[h].count}});
    j["summary"] = std::move(s);
    return j;
}

void write_forecast_csv(std::ostream& out, const ForecastReport& r, const std::vector<std::string>& labels) {
    out << "origin,horizon,series,prediction,error\n";
    for (std::size_t h = 0; h < r.errors.size(); ++h)
        for (std::size_t o = 0; o < r.origins.size(); ++o)
            for (Eigen::Index i = 0; i < r.errors[h].rows(); ++i) {
                const double err = r.errors[h](i, static_cast<Eigen::Index>(o));
                if (!std::isfinite(err)) continue;
                out << r.origins[o] << ',' << h + 1 << ',' << quote_csv_field(labels.at(static_cast<std::size_t>(i))) << ','
                    << format_number(r.predictions[h](i, static_cast<Eigen::Index>(o))) << ',' << format_number(err) << '\n';
            }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace bandvar::io
