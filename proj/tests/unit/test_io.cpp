#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "fraug/io/csv.hpp"
#include "fraug/io/json.hpp"
#include "fraug/io/svg.hpp"
#include "fraug/synthetic.hpp"

using namespace fraug;

namespace {

io::Dataset parse(const std::string& text) {
    std::istringstream in(text);
    return io::parse_csv(in, "mem.csv");
}

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Csv, ValueOnlyRoundTrip) {
    const auto ds = parse("temperature\n1.5\n2.25\n-3\n");
    EXPECT_EQ(ds.abscissa, io::Abscissa::Index);
    ASSERT_EQ(ds.series.size(), 3u);
    EXPECT_EQ(ds.series[2], (Point{2, -3}));
    EXPECT_EQ(io::to_csv(ds.series, ds), "temperature\n1.50\n2.25\n-3.00\n");
}

TEST(Csv, NumericAbscissa) {
    const auto ds = parse("x,value\n0.5,1\n1.25,2\n4,3\n");
    EXPECT_EQ(ds.abscissa, io::Abscissa::Numeric);
    EXPECT_EQ(ds.series[1].x, 1.25);
    EXPECT_EQ(io::to_csv(ds.series, ds), "x,value\n0.5,1.00\n1.25,2.00\n4,3.00\n");
}

TEST(Csv, TimestampsRoundTrip) {
    const auto ds = parse("time,temp\n2021-09-01T00:00:00,10\n2021-09-01T01:00,11.5\n2021-09-01 02:00:00Z,12\n");
    EXPECT_EQ(ds.abscissa, io::Abscissa::Timestamp);
    EXPECT_EQ(ds.series[1].x, 3600.0);
    EXPECT_EQ(ds.series[2].x, 7200.0);
    TimeSeries dense = {{0, 10}, {1800, 10.75}, {3600, 11.5}};
    EXPECT_EQ(io::to_csv(dense, ds),
              "time,temp\n2021-09-01T00:00:00,10.00\n2021-09-01T00:30:00,10.75\n2021-09-01T01:00:00,11.50\n");
}

TEST(Csv, TimestampParsing) {
    EXPECT_EQ(io::parse_timestamp("1970-01-01T00:00:00"), 0);
    EXPECT_EQ(io::parse_timestamp("2000-03-01 12:30"), 951913800);
    EXPECT_FALSE(io::parse_timestamp("2021-02-30T00:00:00").has_value());
    EXPECT_FALSE(io::parse_timestamp("12.5").has_value());
    EXPECT_EQ(io::format_timestamp(951913800), "2000-03-01T12:30:00");
}

TEST(Csv, ParseErrorsNameTheLine) {
    try {
        (void)parse("x,value\n1,2\n2,abc\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("mem.csv:3"), std::string::npos) << e.what();
    }
    try {
        (void)parse("x,value\n1,2,3\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
    try {
        (void)parse("value\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
    }
    try {
        (void)parse("x,value\n2,1\n1,2\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonMonotonicAbscissa);
    }
}

TEST(Csv, MissingFile) {
    try {
        (void)io::read_csv("/nonexistent/dir/file.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
        EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/file.csv"), std::string::npos);
    }
}

TEST(Csv, ValueFormatting) {
    EXPECT_EQ(io::format_value(-0.001), "0.00");
    EXPECT_EQ(io::format_value(2.345), "2.35");
    EXPECT_EQ(io::format_abscissa(0.1), "0.1");
}

TEST(Svg, ElementCounts) {
    const auto g = synthetic::gamma();
    const std::vector<io::PlotSeries> plots = {{"nodes", g, true}, {"other", synthetic::noise(5, 1), false}};
    const auto svg = io::render_svg(plots, "A & B");
    EXPECT_EQ(count(svg, "<polyline"), 2u);
    EXPECT_EQ(count(svg, "<circle"), g.size());
    EXPECT_NE(svg.find("A &amp; B"), std::string::npos);
    EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
    EXPECT_EQ(svg, io::render_svg(plots, "A & B"));
}

TEST(Svg, EmptyInput) {
    try {
        (void)io::render_svg({});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
    }
}

TEST(Json, Fnv1a) {
    EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Json, StrategyConfigRoundTrip) {
    StrategyConfig c;
    c.kind = StrategyKind::Chs;
    c.n_interpolation = 5;
    c.s_low = 0.0;
    c.s_high = 0.2;
    c.seed = 99;
    c.strict = true;
    EXPECT_EQ(io::strategy_config_from_json(io::Json::parse(io::dump(io::to_json(c)))), c);
    try {
        (void)io::strategy_config_from_json(io::Json{{"strategy", "bogus"}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(Json, PredictorConfigRoundTrip) {
    const PredictorConfig c{12, 7, 0.0031622776601683794, 25, 4};
    EXPECT_EQ(io::predictor_config_from_json(io::Json::parse(io::dump(io::to_json(c)))), c);
    try {
        (void)io::predictor_config_from_json(io::Json{{"units", 3}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(Json, WeightsRoundTrip) {
    auto w = LstmWeights::zeros(2);
    auto flat = w.flatten();
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = 0.1 * static_cast<double>(i) - 1.0;
    w = LstmWeights::unflatten(2, flat);
    const auto back = io::lstm_weights_from_json(io::Json::parse(io::dump(io::to_json(w))));
    EXPECT_EQ(back.flatten(), flat);
}
