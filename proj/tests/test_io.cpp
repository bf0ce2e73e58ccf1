#include "bandvar/io.hpp"
#include "bandvar/simulate.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace bandvar;

TEST(Csv, FormatRoundTripsDoubles) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e308, 123456789.123456789}) EXPECT_EQ(std::stod(io::format_number(v)), v);
}

TEST(Csv, SeriesRoundTripIsExact) {
    Rng rng(1);
    const TimeSeries ts(oracle::random_matrix(4, 25, rng), {"a", "b,c", "d\"e", "f"});
    std::stringstream ss;
    io::write_series_csv(ss, ts);
    const TimeSeries back = io::read_series_csv(ss);
    EXPECT_EQ(back.values, ts.values);
    EXPECT_EQ(back.labels, ts.labels);
}

TEST(Csv, QuotedFields) {
    EXPECT_EQ(io::split_csv_record("a,\"b,c\",\"d\"\"e\"", 1), (std::vector<std::string>{"a", "b,c", "d\"e"}));
    EXPECT_EQ(io::split_csv_record("x,,y", 1), (std::vector<std::string>{"x", "", "y"}));
    EXPECT_EQ(io::quote_csv_field("plain"), "plain");
    EXPECT_EQ(io::quote_csv_field("a,b"), "\"a,b\"");
    EXPECT_THROW(io::split_csv_record("\"open", 3), io::ParseError);
}

TEST(Csv, BadNumberReportsLine) {
    std::istringstream in("a,b\n1,2\n3,oops\n");
    try {
        io::read_series_csv(in);
        FAIL() << "expected ParseError";
    } catch (const io::ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("oops"), std::string::npos);
    }
}

TEST(Csv, RaggedRowReportsLine) {
    std::istringstream in("a,b\n1,2\n\n3\n");
    try {
        io::read_series_csv(in);
        FAIL() << "expected ParseError";
    } catch (const io::ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(Csv, EmptyInputs) {
    std::istringstream none("");
    EXPECT_THROW(io::read_series_csv(none), io::ParseError);
    std::istringstream header_only("a,b\n");
    EXPECT_THROW(io::read_series_csv(header_only), io::ParseError);
    std::istringstream nan("a\nnan\n");
    EXPECT_THROW(io::read_series_csv(nan), io::ParseError);
}

TEST(Csv, MatrixRoundTrip) {
    Rng rng(2);
    const DenseMatrix m = oracle::random_matrix(3, 5, rng);
    std::stringstream ss;
    io::write_matrix_csv(ss, m);
    EXPECT_EQ(io::read_matrix_csv(ss), m);
}

TEST(Coords, HeaderIsSkipped) {
    std::istringstream with("label,x,y\ns1,0.5,1\ns2,2,-3\n");
    const io::LabelledPoints a = io::read_coords_csv(with);
    ASSERT_EQ(a.labels.size(), 2u);
    EXPECT_EQ(a.labels[1], "s2");
    EXPECT_EQ(a.coords[1][1], -3.0);
    std::istringstream without("s1,0.5,1\n");
    EXPECT_EQ(io::read_coords_csv(without).labels.size(), 1u);
    std::istringstream bad("s1,0.5\n");
    EXPECT_THROW(io::read_coords_csv(bad), io::ParseError);
}

TEST(ModelJson, RoundTrip) {
    Rng rng(3);
    const BandedVarModel m({gen_coeff_uniform(6, 1, rng, 0.7), gen_coeff_uniform(6, 1, rng, 0.2)}, 1,
                           gen_sigma_eps_structured(6), Vector::LinSpaced(6, -1.0, 1.0));
    const nlohmann::json j = nlohmann::json::parse(io::model_to_json(m).dump());
    const BandedVarModel back = io::model_from_json(j);
    EXPECT_EQ(back.order(), 2u);
    EXPECT_EQ(back.bandwidth(), 1u);
    for (std::size_t l = 0; l < 2; ++l) EXPECT_EQ(back.coeff(l), m.coeff(l));
    EXPECT_EQ(*back.sigma_eps(), *m.sigma_eps());
    EXPECT_EQ(*back.mean(), *m.mean());
}

TEST(ModelJson, RejectsOutOfBandEntries) {
    nlohmann::json j = io::model_to_json(BandedVarModel({BandedMatrix(3, 0)}, 0));
    j["coeffs"][0][0][2] = 0.1;
    EXPECT_THROW(io::model_from_json(j), std::invalid_argument);
    j = io::model_to_json(BandedVarModel({BandedMatrix(3, 0)}, 0));
    j["schema_version"] = io::kSchemaVersion + 1;
    EXPECT_THROW(io::model_from_json(j), std::invalid_argument);
    j = io::model_to_json(BandedVarModel({BandedMatrix(3, 0)}, 0));
    j["d"] = 2;
    EXPECT_THROW(io::model_from_json(j), std::invalid_argument);
}

TEST(SelectionCsv, RowsAndOrders) {
    SelectionTrace t;
    t.k_per_row = {1, 2};
    std::ostringstream plain;
    io::write_selection_csv(plain, t);
    EXPECT_EQ(plain.str(), "row,k_hat\n0,1\n1,2\n");
    t.d_per_row = {1, 3};
    t.d_hat = 3;
    std::ostringstream out;
    io::write_selection_csv(out, t);
    EXPECT_EQ(out.str(), "row,k_hat,d_hat\n0,1,1\n1,2,3\n");
}
