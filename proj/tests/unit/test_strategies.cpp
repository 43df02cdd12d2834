#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fraug/log.hpp"
#include "fraug/rng.hpp"
#include "fraug/strategies.hpp"
#include "fraug/synthetic.hpp"

using namespace fraug;

namespace {

TimeSeries noisy_trend(std::uint64_t seed, std::size_t n = 10, double noise = 0.5) {
    Rng rng(seed);
    TimeSeries s;
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = static_cast<double>(i);
        s.push_back({x, 2.0 * x + 1.0 + rng.normal(0, noise)});
    }
    return s;
}

TimeSeries wavy(std::size_t n) {
    Rng rng(17);
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(std::sin(0.4 * static_cast<double>(i)) * 5.0 + rng.normal(0, 0.4));
    }
    return TimeSeries::from_values(v);
}

/// Captures log output for the lifetime of the object.
class CapturedLog {
public:
    CapturedLog() {
        previous_ = log::set_sink([this](log::Level, std::string_view m) { lines_.emplace_back(m); });
    }
    ~CapturedLog() { log::set_sink(previous_); }
    const std::vector<std::string>& lines() const { return lines_; }

private:
    log::Sink previous_;
    std::vector<std::string> lines_;
};

StrategyConfig config_for(StrategyKind kind, std::uint64_t seed = 0) {
    StrategyConfig c;
    c.kind = kind;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(FsScaling, GammaPrefix) {
    const auto s = fs_scaling(synthetic::gamma().slice(0, 5));
    // 4 / sqrt(36^2 + 4^2)
    EXPECT_NEAR(s.values[0], 0.11043, 1e-5);
    EXPECT_NEAR(s.values[0], 0.110431526075, 1e-12);
    EXPECT_TRUE(s.clamped.empty());
}

TEST(FsScaling, FullGammaClampsWithWarning) {
    CapturedLog captured;
    const auto s = fs_scaling(synthetic::gamma());
    EXPECT_DOUBLE_EQ(s.values[0], 1.0 - 1e-6);
    EXPECT_DOUBLE_EQ(s.values.back(), -(1.0 - 1e-6));
    EXPECT_EQ(s.clamped.size(), 10u);
    ASSERT_EQ(captured.lines().size(), 1u);
    EXPECT_NE(captured.lines()[0].find("clamped"), std::string::npos);
}

TEST(FsScaling, FlatSegment) {
    const TimeSeries flat = {{0, 3}, {1, 3}, {2, 3}, {3, 3}};
    try {
        (void)fs_scaling(flat);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AllPointsEqual);
    }
}

TEST(Fs, LinearSegmentEqualFactors) {
    const TimeSeries line = {{0, 1}, {1, 3}, {2, 5}, {3, 7}, {4, 9}};
    const auto s = fs_scaling(line);
    for (double v : s.values) EXPECT_NEAR(v, s.values[0], 1e-15);
    EXPECT_LT(s.values[0], 0.25);
    const auto out = fs(line, 9);
    EXPECT_LE(max_deviation_from_linear(line, out.points), 1e-9);
    EXPECT_EQ(out.nodes(), line);
}

TEST(Fs, Deterministic) {
    const auto seg = wavy(12);
    EXPECT_EQ(fs(seg, 17).points, fs(seg, 17).points);
}

TEST(Fs, GammaSequenceSizeSensitivity) {
    CapturedLog quiet;
    auto c6 = config_for(StrategyKind::Fs);
    c6.sequence_size = 6;
    c6.strict = true;
    c6.n_interpolation = 5;
    auto c11 = c6;
    c11.sequence_size = 11;
    const auto gamma = synthetic::gamma();
    const auto a = augment(gamma, c6);
    const auto b = augment(gamma, c11);
    EXPECT_EQ(a.series.size(), 61u);
    EXPECT_EQ(b.series.size(), 61u);
    EXPECT_LT(max_deviation_from_linear(gamma, a.series), max_deviation_from_linear(gamma, b.series));
}

TEST(Chs, BestNotWorseThanFirst) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = chs(noisy_trend(seed), config_for(StrategyKind::Chs, seed));
        ASSERT_EQ(r.candidates.size(), 15u);
        EXPECT_LE(r.candidates[r.best_index].distance, r.candidates.front().distance);
        for (const auto& c : r.candidates) EXPECT_GE(c.distance, r.candidates[r.best_index].distance);
        EXPECT_EQ(r.s, r.candidates[r.best_index].s);
    }
}

TEST(Chs, NarrowRangeStaysCloserToLinear) {
    int closer = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto seg = noisy_trend(100 + seed);
        auto narrow = config_for(StrategyKind::Chs, seed);
        narrow.s_low = 0.0;
        narrow.s_high = 0.2;
        const auto wide = config_for(StrategyKind::Chs, seed);
        const double dn = max_deviation_from_linear(seg, chs(seg, narrow).series.points);
        const double dw = max_deviation_from_linear(seg, chs(seg, wide).series.points);
        closer += dn <= dw ? 1 : 0;
    }
    EXPECT_GE(closer, 8);
}

TEST(Chs, ConstantSegment) {
    const TimeSeries flat = {{0, 1}, {1, 1}, {2, 1}, {3, 1}};
    try {
        (void)chs(flat, config_for(StrategyKind::Chs));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstantSeries);
    }
}

TEST(Cvs, ExactlyLinearSegmentHasZeroObjective) {
    // Every constant s reproduces a straight line, so only the objective is pinned.
    const TimeSeries line = {{0, 1}, {1, 3}, {2, 5}, {3, 7}, {4, 9}};
    const auto r = cvs(line, config_for(StrategyKind::Cvs));
    EXPECT_LE(r.objective, 1e-9);
    EXPECT_LE(max_deviation_from_linear(line, r.series.points), 1e-9);
}

TEST(Cvs, NoisyTrendPrefersSmallScaling) {
    int small = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = cvs(noisy_trend(seed), config_for(StrategyKind::Cvs, seed));
        small += std::abs(r.s) <= 0.25 ? 1 : 0;
    }
    EXPECT_GE(small, 8);
}

TEST(Cvs, BestIsMinimumOfHistory) {
    const auto seg = wavy(10);
    const auto r = cvs(seg, config_for(StrategyKind::Cvs, 4));
    ASSERT_EQ(r.history.size(), 15u);
    for (const auto& [s, obj] : r.history) EXPECT_LE(r.objective, obj);
    EXPECT_EQ(r.objective, rmse_to_linear(seg, r.series));
}

TEST(OptimizeSequenceSize, RangeContract) {
    const auto series = wavy(30);
    const auto r = optimize_sequence_size(series, 5, 20, 1);
    EXPECT_GE(r.sequence_size, 4u);
    EXPECT_LE(r.sequence_size, 27u);
    EXPECT_EQ(r.history.size(), 20u);
    try {
        (void)optimize_sequence_size(wavy(7), 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
    }
}

TEST(OptimizeSequenceSize, AvoidsDegenerateSizes) {
    // Tent: equal and opposite slopes meeting at the midpoint.
    std::vector<double> v;
    for (int i = 0; i <= 20; ++i) v.push_back(10.0 - std::abs(i - 10));
    const auto tent = TimeSeries::from_values(v);
    double worst = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t size = 4; size <= 18; ++size) {
        const double t = fs_total_rmse(tent, size, 5);
        worst = std::max(worst, t);
        best = std::min(best, t);
    }
    const auto r = optimize_sequence_size(tent, 5, 30, 0);
    EXPECT_LT(r.total_rmse, worst);
    EXPECT_EQ(r.total_rmse, fs_total_rmse(tent, r.sequence_size, 5));
    EXPECT_GE(r.total_rmse, best);
}

TEST(Augment, LengthAndNodesForEveryStrategy) {
    const auto series = wavy(36);
    for (auto kind : {StrategyKind::Chs, StrategyKind::Cvs, StrategyKind::Fs, StrategyKind::Linear}) {
        SCOPED_TRACE(std::string(to_string(kind)));
        const auto r = augment(series, config_for(kind, 3));
        ASSERT_EQ(r.series.size(), 631u);
        for (std::size_t i = 0; i < series.size(); ++i) {
            EXPECT_EQ(r.series[i * 18], series[i]);
        }
        for (std::size_t i = 1; i < r.series.size(); ++i) EXPECT_GT(r.series[i].x, r.series[i - 1].x);
        EXPECT_EQ(r.segments.size(), 4u);
    }
}

TEST(Augment, LinearKindIsCollinear) {
    const TimeSeries line = TimeSeries::from_values(std::vector<double>{1, 1.5, 2, 2.5, 3, 3.5, 4});
    auto c = config_for(StrategyKind::Linear);
    c.sequence_size = 4;
    const auto r = augment(line, c);
    for (const auto& p : r.series) EXPECT_NEAR(p.y, 1.0 + 0.5 * p.x, 1e-9);
}

TEST(Augment, SeededAndDeterministic) {
    const auto series = wavy(20);
    const auto a = augment(series, config_for(StrategyKind::Chs, 8));
    const auto b = augment(series, config_for(StrategyKind::Chs, 8));
    EXPECT_EQ(a.series, b.series);
}

TEST(Augment, FsSearchesSequenceSize) {
    auto c = config_for(StrategyKind::Fs);
    c.sequence_size = 0;
    c.sequence_trials = 10;
    c.n_interpolation = 3;
    const auto r = augment(wavy(30), c);
    ASSERT_TRUE(r.sequence_search.has_value());
    EXPECT_EQ(r.sequence_size, r.sequence_search->sequence_size);
}

TEST(Augment, InvalidConfig) {
    auto c = config_for(StrategyKind::Cvs);
    c.sequence_size = 0;
    try {
        (void)augment(wavy(20), c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
    c.sequence_size = 10;
    c.s_low = 0.5;
    c.s_high = 0.2;
    try {
        (void)augment(wavy(20), c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidRange);
    }
}
