#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "fraug/io/csv.hpp"
#include "fraug/io/json.hpp"
#include "fraug/synthetic.hpp"

namespace fs = std::filesystem;
using namespace fraug;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::initializer_list<std::string> args) {
    std::vector<std::string> storage = {"fraug"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("fraug_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const TimeSeries& series) const {
        const auto p = path(name);
        io::write_text_file(p, io::to_csv(series));
        return p;
    }

    fs::path dir_;
};

std::size_t data_rows(const std::string& file) {
    std::ifstream in(file);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n - 1;
}

}  // namespace

TEST_F(CliTest, GenerateGammaIsExact) {
    const auto out = path("g.csv");
    const auto r = run({"generate", "--kind", "gamma", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::read_file(out),
              "x,value\n1,10.00\n2,14.00\n3,19.00\n4,26.00\n5,35.00\n6,46.00\n7,35.00\n8,26.00\n9,19.00\n10,14.00\n11,10.00\n");
}

TEST_F(CliTest, GenerateNoiseIsSeeded) {
    ASSERT_EQ(run({"generate", "--kind", "noise", "--n", "50", "--seed", "7", "--out", path("a.csv")}).code, 0);
    ASSERT_EQ(run({"generate", "--kind", "noise", "--n", "50", "--seed", "7", "--out", path("b.csv")}).code, 0);
    ASSERT_EQ(run({"generate", "--kind", "noise", "--n", "50", "--seed", "8", "--out", path("c.csv")}).code, 0);
    EXPECT_EQ(io::read_file(path("a.csv")), io::read_file(path("b.csv")));
    EXPECT_NE(io::read_file(path("a.csv")), io::read_file(path("c.csv")));
}

TEST_F(CliTest, GenerateDiurnalHasDailyCycle) {
    ASSERT_EQ(run({"generate", "--kind", "diurnal", "--out", path("d.csv")}).code, 0);
    const auto ys = io::read_csv(path("d.csv")).series.ys();
    ASSERT_EQ(ys.size(), 168u);
    double mean = 0;
    for (double y : ys) mean += y;
    mean /= static_cast<double>(ys.size());
    auto acf = [&](std::size_t lag) {
        double num = 0;
        double den = 0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            den += (ys[i] - mean) * (ys[i] - mean);
            if (i + lag < ys.size()) num += (ys[i] - mean) * (ys[i + lag] - mean);
        }
        return num / den;
    };
    for (std::size_t lag = 18; lag <= 30; ++lag) {
        if (lag != 24) {
            EXPECT_GT(acf(24), acf(lag)) << "lag " << lag;
        }
    }
}

TEST_F(CliTest, InterpolateLengthAndManifest) {
    const auto in = write("in.csv", synthetic::diurnal(36, 1));
    const auto out = path("out.csv");
    const auto r = run({"interpolate", in, "--strategy", "cvs", "--sequence-size", "10", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(data_rows(out), 631u);
    const auto manifest = io::Json::parse(io::read_file(out + ".json"));
    EXPECT_EQ(manifest["command"], "interpolate");
    EXPECT_EQ(manifest["metrics"]["output_points"], 631);
    EXPECT_EQ(manifest["input_hash"], io::fnv1a_hex(io::read_file(in)));
}

TEST_F(CliTest, FsSequenceSizeOnGamma) {
    const auto in = write("g.csv", synthetic::gamma());
    auto deviation = [&](const std::string& size, const std::string& name) {
        const auto r = run({"interpolate", in, "--strategy", "fs", "--sequence-size", size, "--strict",
                            "--n-interpolation", "5", "--out", path(name)});
        EXPECT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(data_rows(path(name)), 61u);
        return io::Json::parse(io::read_file(path(name) + ".json"))["metrics"]["max_deviation_from_linear"]
            .get<double>();
    };
    EXPECT_LT(deviation("6", "six.csv"), deviation("11", "eleven.csv"));
}

TEST_F(CliTest, UsageErrors) {
    const auto in = write("in.csv", synthetic::gamma());
    const auto bad = run({"interpolate", in, "--strategy", "bogus", "--out", path("o.csv")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_FALSE(bad.err.empty());
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    const auto strict = run({"interpolate", in, "--sequence-size", "5", "--strict", "--out", path("o.csv")});
    EXPECT_EQ(strict.code, 3);
    EXPECT_NE(strict.err.find("StrictModeIndivisible"), std::string::npos) << strict.err;
}

TEST_F(CliTest, MissingInputFile) {
    const auto missing = path("nope.csv");
    const auto r = run({"analyze", missing});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST_F(CliTest, DensifyFactorOneIsExact) {
    const auto in = write("fine.csv", synthetic::diurnal(30, 2));
    const auto r = run({"densify", in, "--factor", "1", "--strategy", "cvs"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "cvs MAE 0.000000\n");
}

TEST_F(CliTest, DensifyReportsEveryStrategy) {
    const auto in = write("fine.csv", synthetic::diurnal(61, 2));
    const auto report = path("report.json");
    const auto r = run({"densify", in, "--factor", "6", "--report", report});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::Json::parse(io::read_file(report));
    for (const char* name : {"chs", "cvs", "fs", "linear"}) {
        ASSERT_TRUE(j["mae"].contains(name)) << name;
        EXPECT_GT(j["mae"][name].get<double>(), 0.0);
    }
}

TEST_F(CliTest, DensifyFactorMismatch) {
    const auto coarse = write("coarse.csv", synthetic::diurnal(10, 2));
    const auto truth = write("truth.csv", synthetic::diurnal(50, 2));
    const auto r = run({"densify", coarse, "--ground-truth", truth, "--factor", "6", "--strategy", "linear"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("FactorMismatch"), std::string::npos) << r.err;
}

TEST_F(CliTest, ForecastConfigRoundTrip) {
    const auto in = write("series.csv", synthetic::diurnal(80, 3));
    io::write_text_file(path("cfg.json"),
                        io::dump(io::to_json(PredictorConfig{6, 6, 0.01, 5, 2})));
    const auto first = run({"forecast", in, "--config", path("cfg.json"), "--config-out", path("used.json"),
                            "--out", path("a.json")});
    ASSERT_EQ(first.code, 0) << first.err;
    const auto second = run({"forecast", in, "--config", path("used.json"), "--out", path("b.json")});
    ASSERT_EQ(second.code, 0) << second.err;
    const auto a = io::Json::parse(io::read_file(path("a.json")));
    const auto b = io::Json::parse(io::read_file(path("b.json")));
    EXPECT_EQ(a["metrics"]["lstm"], b["metrics"]["lstm"]);
    EXPECT_EQ(a["model"], b["model"]);
}

TEST_F(CliTest, ForecastLiteTuning) {
    const auto in = write("series.csv", synthetic::diurnal(60, 4));
    const auto r = run({"forecast", in, "--lite", "--seed", "1", "--out", path("f.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::Json::parse(io::read_file(path("f.json")));
    EXPECT_TRUE(j["metrics"].contains("tuning"));
    EXPECT_NE(r.out.find("lstm"), std::string::npos);
}

TEST_F(CliTest, ForecastConfigAndTuneConflict) {
    const auto in = write("series.csv", synthetic::diurnal(60, 4));
    io::write_text_file(path("cfg.json"), io::dump(io::to_json(PredictorConfig{})));
    EXPECT_EQ(run({"forecast", in, "--tune", "--config", path("cfg.json")}).code, 2);
}

TEST_F(CliTest, AnalyzeWhiteNoise) {
    const auto in = write("noise.csv", synthetic::noise(300, 3));
    const auto r = run({"analyze", in, "--json", path("a.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::Json::parse(io::read_file(path("a.json")));
    EXPECT_LT(j["adf"]["p_value"].get<double>(), 0.05);
    EXPECT_NE(r.out.find(" stationary"), std::string::npos);
    EXPECT_NE(r.out.find("hurst "), std::string::npos);
}

TEST_F(CliTest, PlotCounts) {
    const auto g = write("g.csv", synthetic::gamma());
    std::vector<std::string> others;
    for (const char* s : {"chs", "cvs", "fs"}) {
        const auto out = path(std::string(s) + ".csv");
        ASSERT_EQ(run({"interpolate", g, "--strategy", s, "--sequence-size", "6", "--n-interpolation", "5",
                       "--out", out})
                      .code,
                  0);
        others.push_back(out);
    }
    const auto svg_path = path("p.svg");
    const auto r = run({"plot", g, others[0], others[1], others[2], "--labels", "data,chs,cvs,fs", "--out",
                        svg_path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto svg = io::read_file(svg_path);
    std::size_t polylines = 0;
    std::size_t circles = 0;
    for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++polylines;
    for (auto p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
    EXPECT_EQ(polylines, 4u);
    EXPECT_EQ(circles, 11u);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
    const auto in = write("in.csv", synthetic::diurnal(30, 5));
    for (const char* strategy : {"chs", "cvs"}) {
        const auto a = run({"interpolate", in, "--strategy", strategy, "--seed", "3", "--out", path("a.csv"),
                            "--manifest", path("m.json")});
        ASSERT_EQ(a.code, 0) << a.err;
        const auto csv = io::read_file(path("a.csv"));
        const auto manifest = io::read_file(path("m.json"));
        ASSERT_EQ(run({"interpolate", in, "--strategy", strategy, "--seed", "3", "--out", path("a.csv"),
                       "--manifest", path("m.json")})
                      .code,
                  0);
        EXPECT_EQ(csv, io::read_file(path("a.csv")));
        EXPECT_EQ(manifest, io::read_file(path("m.json")));
    }
}
