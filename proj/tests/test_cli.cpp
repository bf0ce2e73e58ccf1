#include "bandvar/forecast.hpp"
#include "bandvar/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace bandvar;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("bandvar_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    // Runs the CLI with stdout to `stdout_file`; returns the exit status.
    int run(const std::string& args, const std::string& stdout_file = "stdout.txt") const {
        const std::string cmd = std::string("\"") + BANDVAR_CLI_PATH + "\" " + args + " > \"" + path(stdout_file) +
                                "\" 2> \"" + path("stderr.txt") + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(path(name), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, SimulateWritesDataTruthAndManifest) {
    ASSERT_EQ(run("simulate --p 12 --n 80 --k0 1 --seed 3 --out-dir " + path("a")), 0);
    const TimeSeries ts = io::read_series_csv_file(path("a/data.csv"));
    EXPECT_EQ(ts.dim(), 12u);
    EXPECT_EQ(ts.length(), 80u);
    const BandedVarModel m = io::model_from_json(io::read_json_file(path("a/truth.json")));
    EXPECT_EQ(m.bandwidth(), 1u);
    const auto manifest = io::read_json_file(path("a/manifest.json"));
    EXPECT_EQ(manifest.at("command"), "simulate");
    EXPECT_EQ(manifest.at("seed"), 3);

    // same seed, same bytes; global flags may follow the subcommand
    ASSERT_EQ(run("--seed 3 simulate --p 12 --n 80 --k0 1 --out-dir " + path("b")), 0);
    EXPECT_EQ(slurp("a/data.csv"), slurp("b/data.csv"));
    EXPECT_EQ(slurp("a/truth.json"), slurp("b/truth.json"));
    ASSERT_EQ(run("simulate --p 12 --n 80 --k0 1 --seed 4 --threads 2 --out-dir " + path("c")), 0);
    EXPECT_NE(slurp("a/data.csv"), slurp("c/data.csv"));
}

TEST_F(Cli, MixtureWithZeroBandwidthIsRejected) {
    EXPECT_NE(run("simulate --p 10 --n 50 --k0 0 --setting mixture --out-dir " + path("m")), 0);
    EXPECT_NE(slurp("stderr.txt").find("k0"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run("fit"), 1);
    EXPECT_EQ(run("select --data " + path("missing.csv")), 1);
    EXPECT_EQ(run("no-such-command"), 1);
    EXPECT_EQ(run("--threads -1 select --data x.csv"), 1);
    std::ofstream(path("bad.csv")) << "a,b\n1,2\n3,x\n";
    EXPECT_EQ(run("fit --k 0 --data " + path("bad.csv")), 1);
    EXPECT_NE(slurp("stderr.txt").find("line 3"), std::string::npos);
}

TEST_F(Cli, DuplicateSeriesExitTwoAndNameRows) {
    ASSERT_EQ(run("simulate --p 6 --n 40 --k0 1 --out-dir " + path("s")), 0);
    TimeSeries ts = io::read_series_csv_file(path("s/data.csv"));
    ts.values.row(2) = ts.values.row(1);
    io::write_series_csv_file(path("dup.csv"), ts);
    EXPECT_EQ(run("fit --k 1 --data " + path("dup.csv")), 2);
    EXPECT_NE(slurp("stderr.txt").find("1 2"), std::string::npos);
}

TEST_F(Cli, FitThenFittedValuesMatchLibrary) {
    ASSERT_EQ(run("simulate --p 10 --n 120 --k0 1 --seed 5 --out-dir " + path("s")), 0);
    ASSERT_EQ(run("fit --data " + path("s/data.csv") + " --k 1 --demean --out " + path("model.json")), 0);
    ASSERT_EQ(run("forecast --fitted --data " + path("s/data.csv") + " --model " + path("model.json") + " --out " +
                  path("fitted.csv")),
              0);
    const TimeSeries ts = io::read_series_csv_file(path("s/data.csv"));
    const BandedVarModel m = io::model_from_json(io::read_json_file(path("model.json")));
    const DenseMatrix expect = one_step_fitted(m, ts);
    const TimeSeries got = io::read_series_csv_file(path("fitted.csv"));
    EXPECT_EQ(got.values, expect);
}

TEST_F(Cli, SelectReportsBandwidth) {
    ASSERT_EQ(run("simulate --p 100 --n 200 --k0 2 --setting uniform --seed 7 --out-dir " + path("s")), 0);
    ASSERT_EQ(run("select --K 15 --Cn loglog --data " + path("s/data.csv") + " --joint --out " + path("sel.json") + " --csv " +
                  path("rows.csv")),
              0);
    const std::string out = slurp("stdout.txt");
    EXPECT_NE(out.find("k_hat = 2"), std::string::npos) << out;
    EXPECT_NE(out.find("k_tilde = "), std::string::npos);
    EXPECT_EQ(io::read_json_file(path("sel.json")).at("k_hat"), 2);
    EXPECT_EQ(slurp("rows.csv").rfind("row,k_hat\n", 0), 0u);
}

TEST_F(Cli, ForecastSummary) {
    ASSERT_EQ(run("simulate --p 8 --n 100 --k0 1 --out-dir " + path("s")), 0);
    ASSERT_EQ(run("forecast --data " + path("s/data.csv") + " --holdout 10 --horizon 2 --k 1 --out " + path("f.csv") +
                  " --summary " + path("sum.json")),
              0);
    EXPECT_EQ(slurp("f.csv").rfind("origin,horizon,series,prediction,error\n", 0), 0u);
    EXPECT_TRUE(fs::exists(path("sum.json")));
}

TEST_F(Cli, ForecastWithSeasonalMeansRemoved) {
    ASSERT_EQ(run("simulate --p 4 --n 120 --k0 1 --seed 9 --out-dir " + path("s")), 0);
    TimeSeries ts = io::read_series_csv_file(path("s/data.csv"));
    for (Eigen::Index t = 0; t < ts.values.cols(); ++t) ts.values.col(t).array() += 5.0 * static_cast<double>(t % 12);
    io::write_series_csv_file(path("seasonal.csv"), ts);
    ASSERT_EQ(run("forecast --data " + path("seasonal.csv") + " --period 12 --holdout 12 --k 1 --no-demean --out " +
                  path("f.csv") + " --summary " + path("sum.json")),
              0);
    ASSERT_EQ(run("forecast --data " + path("s/data.csv") + " --holdout 12 --k 1 --out " + path("g.csv") + " --summary " +
                  path("plain.json")),
              0);
    // with the seasonal pattern removed the error is on the scale of the unperturbed series
    const double with = io::read_json_file(path("sum.json")).at("summary").at(0).at("mean").get<double>();
    const double plain = io::read_json_file(path("plain.json")).at("summary").at(0).at("mean").get<double>();
    EXPECT_LT(with, 1.5 * plain);
}

TEST_F(Cli, AutocovMethods) {
    ASSERT_EQ(run("simulate --p 10 --n 100 --k0 1 --out-dir " + path("s")), 0);
    ASSERT_EQ(run("autocov --data " + path("s/data.csv") + " --lag 1 --method banded --r 2 --out " + path("b.csv")), 0);
    std::ifstream in(path("b.csv"));
    const DenseMatrix b = io::read_matrix_csv(in);
    ASSERT_EQ(b.rows(), 10);
    EXPECT_EQ(b(0, 5), 0.0);
    EXPECT_TRUE(fs::exists(path("b.csv.json")));
    EXPECT_EQ(run("autocov --data " + path("s/data.csv") + " --method thresholded --q 5 --out " + path("t.csv")), 0);
    EXPECT_EQ(run("autocov --data " + path("s/data.csv") + " --method bogus"), 1);
}

TEST_F(Cli, OrderTable) {
    ASSERT_EQ(run("simulate --p 6 --n 120 --k0 1 --out-dir " + path("s")), 0);
    std::ofstream(path("coords.csv")) << "label,x,y\ny1,0,5\ny2,1,4\ny3,2,3\ny4,3,2\ny5,4,1\ny6,5,0\n";
    ASSERT_EQ(run("order --strategy ns,we,nwse,swne,anchor:0 --data " + path("s/data.csv") + " --coords " +
                  path("coords.csv") + " --out " + path("o.csv")),
              0);
    const std::string table = slurp("o.csv");
    EXPECT_EQ(table.rfind("ordering,k_hat,total_bic\n", 0), 0u);
    for (const char* s : {"\nns,", "\nwe,", "\nnwse,", "\nswne,", "\nanchor:0,"}) EXPECT_NE(table.find(s), std::string::npos) << s;
    EXPECT_EQ(run("order --data " + path("s/data.csv") + " --coords " + path("coords.csv") + " --strategy zigzag"), 1);
}

TEST_F(Cli, BenchSingleReplicateIsReproducible) {
    ASSERT_EQ(run("bench --table t1 --reps 1 --p 20 --n 100 --out " + path("a.csv")), 0);
    ASSERT_EQ(run("bench --table t1 --reps 1 --p 20 --n 100 --threads 2 --out " + path("b.csv")), 0);
    const std::string a = slurp("a.csv");
    EXPECT_EQ(a, slurp("b.csv"));
    std::istringstream lines(a);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    const auto fields = io::split_csv_record(row, 2);
    ASSERT_EQ(fields.size(), 10u);
    for (std::size_t c = 4; c < fields.size(); ++c) EXPECT_TRUE(fields[c] == "0" || fields[c] == "100") << fields[c];
    EXPECT_TRUE(fs::exists(path("a.csv.manifest.json")));
}
