#include <gtest/gtest.h>

#include <vector>

#include "fraug/fif.hpp"
#include "fraug/segmentation.hpp"
#include "fraug/synthetic.hpp"

using namespace fraug;

namespace {

TimeSeries ramp(std::size_t n) {
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(0.5 * static_cast<double>(i * i % 7));
    return TimeSeries::from_values(v);
}

}  // namespace

TEST(Split, StrictExact) {
    const auto segs = split(ramp(11), 6, true);
    ASSERT_EQ(segs.size(), 2u);
    EXPECT_EQ(segs[0].start_index, 0u);
    EXPECT_EQ(segs[0].end_index, 5u);
    EXPECT_EQ(segs[1].start_index, 5u);
    EXPECT_EQ(segs[1].end_index, 10u);
    EXPECT_EQ(segs[0].points.back(), segs[1].points.front());
}

TEST(Split, StrictIndivisible) {
    try {
        (void)split(ramp(12), 6, true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::StrictModeIndivisible);
    }
}

TEST(Split, NonStrict36By10) {
    const auto segs = split(ramp(36), 10, false);
    ASSERT_EQ(segs.size(), 4u);
    const std::size_t starts[] = {0, 9, 18, 27};
    const std::size_t ends[] = {9, 18, 27, 35};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(segs[k].start_index, starts[k]);
        EXPECT_EQ(segs[k].end_index, ends[k]);
    }
    EXPECT_EQ(segs.back().points.size(), 9u);
}

TEST(Split, TwoPointLeftoverIsAbsorbed) {
    // 11 points, size 5: [0..4], [4..8], leftover {8, 9, 10} has 3 points;
    // 12 points, size 6: [0..5], [5..10], leftover {10, 11} has 2.
    const auto three = split(ramp(11), 5, false);
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(three.back().points.size(), 3u);
    const auto two = split(ramp(12), 6, false);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two.back().end_index, 11u);
    EXPECT_EQ(two.back().points.size(), 7u);
}

TEST(Split, Preconditions) {
    try {
        (void)split(ramp(3), 3, false);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
    }
    try {
        (void)split(ramp(5), 6, true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
    }
    try {
        (void)split(ramp(10), 2, false);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
}

TEST(Reunite, RoundTripWithoutInteriorPoints) {
    const auto series = ramp(36);
    std::vector<InterpolatedSeries> parts;
    for (const auto& seg : split(series, 10, false)) parts.push_back(as_interpolated(seg.points));
    EXPECT_EQ(reunite(parts), series);
}

TEST(Reunite, SharedNodeOnce) {
    const TimeSeries a = {{0, 1}, {2, 2}, {5, 3.2}};
    const TimeSeries b = {{5, 3.2}, {6, 1}, {8, 0}};
    const std::vector<InterpolatedSeries> parts = {as_interpolated(a), as_interpolated(b)};
    const auto out = reunite(parts);
    ASSERT_EQ(out.size(), 5u);
    int count = 0;
    for (const auto& p : out) count += (p.x == 5 && p.y == 3.2) ? 1 : 0;
    EXPECT_EQ(count, 1);
}

TEST(Reunite, SingleSegmentIdentity) {
    const auto seg = synthetic::gamma();
    const std::vector<InterpolatedSeries> parts = {as_interpolated(seg)};
    EXPECT_EQ(reunite(parts), seg);
}

TEST(Reunite, BoundaryMismatch) {
    const TimeSeries a = {{0, 1}, {2, 2}, {5, 3.2}};
    const TimeSeries b = {{5, 3.3}, {6, 1}, {8, 0}};
    const std::vector<InterpolatedSeries> parts = {as_interpolated(a), as_interpolated(b)};
    try {
        (void)reunite(parts);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BoundaryMismatch);
    }
}

TEST(Reunite, AugmentedLength631) {
    const auto series = ramp(36);
    std::vector<InterpolatedSeries> parts;
    for (const auto& seg : split(series, 10, false)) {
        const std::vector<double> s(seg.points.size() - 1, 0.25);
        parts.push_back(generate_fif(seg.points, s, 17));
    }
    const auto out = reunite(parts);
    EXPECT_EQ(out.size(), 631u);
    // Every original point survives exactly once.
    for (const auto& p : series) {
        int count = 0;
        for (const auto& q : out) count += (q == p) ? 1 : 0;
        EXPECT_EQ(count, 1);
    }
}
