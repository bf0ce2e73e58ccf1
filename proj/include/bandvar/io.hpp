#pragma once

#include "bandvar/autocov.hpp"
#include "bandvar/estimation.hpp"
#include "bandvar/forecast.hpp"
#include "bandvar/model.hpp"
#include "bandvar/selection.hpp"

#include <json.hpp>

#include <array>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace bandvar::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed CSV input; `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// "%.17g": round-trips every double.
std::string format_number(double v);

/// Splits one RFC 4180 record; quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_no);
std::string quote_csv_field(const std::string& s);

/// Header row of labels, then one row per time point.
TimeSeries read_series_csv(std::istream& in);
TimeSeries read_series_csv_file(const std::string& path);
void write_series_csv(std::ostream& out, const TimeSeries& ts);
void write_series_csv_file(const std::string& path, const TimeSeries& ts);

/// Rows of "label,x,y"; a leading header row is skipped when its x field is not numeric.
struct LabelledPoints {
    std::vector<std::string> labels;
    std::vector<std::array<double, 2>> coords;
};
LabelledPoints read_coords_csv(std::istream& in);
LabelledPoints read_coords_csv_file(const std::string& path);

/// Dense matrix as CSV without a header.
void write_matrix_csv(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_matrix_csv(std::istream& in);

nlohmann::json model_to_json(const BandedVarModel& m);
/// Re-validates the band structure: a coefficient entry outside |i-j| <= k0 is an error.
BandedVarModel model_from_json(const nlohmann::json& j);

nlohmann::json fit_report_to_json(const FitReport& r);
nlohmann::json selection_to_json(const SelectionTrace& t);
/// row,k_hat[,d_hat] per row.
void write_selection_csv(std::ostream& out, const SelectionTrace& t);
nlohmann::json joint_to_json(const JointSelection& j);
nlohmann::json bootstrap_to_json(const BootstrapRisk& r);
nlohmann::json autocov_sidecar(const AutocovEstimate& e);
nlohmann::json forecast_summary_to_json(const ForecastReport& r);
/// origin,horizon,series,prediction,error per line.
void write_forecast_csv(std::ostream& out, const ForecastReport& r, const std::vector<std::string>& labels);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bandvar::io
