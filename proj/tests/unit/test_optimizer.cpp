#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fraug/io/json.hpp"
#include "fraug/optimizer.hpp"

using namespace fraug;

namespace {

double quadratic(Trial& t) {
    const double x = t.suggest_float("x", -1, 1);
    return (x - 0.3) * (x - 0.3);
}

}  // namespace

TEST(Study, SeededSuggestionIsReproducible) {
    auto first = [] {
        Study study(Direction::Minimize, 7);
        Trial trial(0, &study);
        return trial.suggest_float("v", -1, 1);
    };
    const double a = first();
    const double b = first();
    EXPECT_EQ(a, b);
    EXPECT_GE(a, -1.0);
    EXPECT_LE(a, 1.0);
}

TEST(Study, InvalidRange) {
    Study study;
    Trial trial(0, &study);
    try {
        (void)trial.suggest_int("k", 4, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidRange);
    }
}

TEST(Study, DuplicateParameterName) {
    Study study;
    try {
        (void)study.optimize(
            [](Trial& t) {
                (void)t.suggest_float("x", 0, 1);
                return t.suggest_float("x", 0, 1);
            },
            1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ObjectiveFailure);
        EXPECT_NE(std::string(e.what()).find("DuplicateParameterName"), std::string::npos);
    }
}

TEST(Study, RangeSafetyAndDeterminism) {
    auto objective = [](Trial& t) {
        const double x = t.suggest_float("x", -2, 3);
        const auto k = t.suggest_int("k", 1, 6);
        return std::abs(x - 1.0) + std::abs(static_cast<double>(k) - 4.0);
    };
    Study a(Direction::Minimize, 11);
    Study b(Direction::Minimize, 11);
    (void)a.optimize(objective, 40);
    (void)b.optimize(objective, 40);
    ASSERT_EQ(a.trials().size(), 40u);
    for (std::size_t i = 0; i < 40; ++i) {
        const auto& ta = a.trials()[i];
        EXPECT_EQ(ta.params(), b.trials()[i].params());
        EXPECT_EQ(ta.objective(), b.trials()[i].objective());
        const double x = ta.param("x");
        const double k = ta.param("k");
        EXPECT_GE(x, -2.0);
        EXPECT_LE(x, 3.0);
        EXPECT_GE(k, 1.0);
        EXPECT_LE(k, 6.0);
        EXPECT_EQ(k, std::round(k));
    }
}

TEST(TpeSample, InsufficientHistory) {
    Rng rng(0);
    const std::vector<std::pair<double, double>> one = {{0.1, 1.0}};
    try {
        (void)tpe_sample(one, ParamSpace::uniform(-1, 1), rng);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientHistory);
    }
}

TEST(TpeSample, FollowsGoodCluster) {
    std::vector<std::pair<double, double>> history;
    for (int i = 0; i < 4; ++i) history.push_back({0.3 + 0.01 * (i - 2), 0.01});
    for (int i = 0; i < 12; ++i) history.push_back({-0.8 + 0.01 * (i - 6), 1.0});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const double v = tpe_sample(history, ParamSpace::uniform(-1, 1), rng);
        EXPECT_GE(v, 0.1);
        EXPECT_LE(v, 0.5);
    }
}

TEST(TpeSample, SymmetricHistoryStaysInRange) {
    const std::vector<std::pair<double, double>> history = {
        {-0.5, 1.0}, {0.5, 1.0}, {0.0, 1.0}, {-0.25, 1.0}, {0.25, 1.0}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const double v = tpe_sample(history, ParamSpace::uniform(-1, 1), rng);
        EXPECT_GE(v, -1.0);
        EXPECT_LE(v, 1.0);
        const double k = tpe_sample(history, ParamSpace::integer(-1, 1), rng);
        EXPECT_EQ(k, std::round(k));
    }
}

TEST(RunStudy, QuadraticBenchmark) {
    Study study(Direction::Minimize, 0);
    const Trial best = run_study(study, quadratic, 30);
    EXPECT_LE(std::abs(best.param("x") - 0.3), 0.05);
    EXPECT_LE(best.objective(), 0.0025);
}

TEST(RunStudy, SuggestionsConcentrate) {
    Study study(Direction::Minimize, 0);
    (void)run_study(study, quadratic, 30);
    int inside = 0;
    for (std::size_t i = 15; i < 30; ++i) {
        const double x = study.trials()[i].param("x");
        inside += (x >= 0.1 && x <= 0.5) ? 1 : 0;
    }
    EXPECT_GE(inside, 9);  // 60% of trials 16..30
}

TEST(RunStudy, Maximize) {
    Study study(Direction::Maximize, 0);
    const Trial best = run_study(study, [](Trial& t) { return -std::abs(t.suggest_float("x", -1, 1)); }, 15);
    EXPECT_LE(std::abs(best.param("x")), 0.2);
}

TEST(RunStudy, SingleTrial) {
    Study study(Direction::Minimize, 3);
    const Trial best = run_study(study, quadratic, 1);
    EXPECT_EQ(best.index(), 0u);
}

TEST(RunStudy, ContinuesExistingStudy) {
    Study study(Direction::Minimize, 3);
    (void)run_study(study, quadratic, 5);
    (void)run_study(study, quadratic, 5);
    EXPECT_EQ(study.trials().size(), 10u);
    EXPECT_EQ(study.trials().back().index(), 9u);
}

TEST(RunStudy, ObjectiveFailure) {
    Study study;
    try {
        (void)run_study(study, [](Trial&) -> double { throw std::runtime_error("boom"); }, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ObjectiveFailure);
        EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
    }
    Study nan_study;
    try {
        (void)run_study(nan_study, [](Trial&) { return std::nan(""); }, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ObjectiveFailure);
    }
}

TEST(History, JsonExport) {
    Study study(Direction::Minimize, 2);
    (void)run_study(study, quadratic, 4);
    const auto records = history(study);
    ASSERT_EQ(records.size(), 4u);
    const auto j = io::to_json(study);
    const auto text = io::dump(j);
    const auto parsed = io::Json::parse(text);
    ASSERT_TRUE(parsed.contains("trials"));
    ASSERT_EQ(parsed["trials"].size(), 4u);
    EXPECT_EQ(parsed["trials"][2]["params"]["x"].get<double>(), records[2].params.at("x"));
    EXPECT_EQ(parsed["trials"][2]["objective"].get<double>(), records[2].objective);
}
