#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/fif.hpp"
#include "fraug/time_series.hpp"

namespace fraug {

/// Contiguous slice [start_index, end_index] of a parent series.
struct Segment {
    TimeSeries points;
    std::size_t start_index = 0;
    std::size_t end_index = 0;
};

struct SplitMode {
    std::size_t sequence_size = 10;
    bool strict = false;
};

/**
 * @brief Splits a series into overlapping segments.
 *
 * Consecutive segments share one boundary point. Strict mode requires
 * (n - 1) to be a multiple of (sequence_size - 1). In non-strict mode the
 * final segment may be shorter (at least 3 points); a leftover of only two
 * points is absorbed into the previous segment instead.
 */
[[nodiscard]] inline std::vector<Segment> split(const TimeSeries& series,
                                                std::size_t sequence_size, bool strict) {
    const std::size_t n = series.size();
    if (sequence_size < 3) {
        fail(ErrorCode::InvalidArgument,
             "sequence_size must be at least 3, got " + std::to_string(sequence_size));
    }
    if (strict) {
        if (n < sequence_size) {
            fail(ErrorCode::SeriesTooShort, std::to_string(n) + " points cannot fill a segment of " +
                                                std::to_string(sequence_size));
        }
        if ((n - 1) % (sequence_size - 1) != 0) {
            fail(ErrorCode::StrictModeIndivisible,
                 std::to_string(n - 1) + " gaps are not a multiple of " +
                     std::to_string(sequence_size - 1));
        }
    } else if (n < 4) {
        fail(ErrorCode::SeriesTooShort,
             "non-strict split needs at least 4 points, got " + std::to_string(n));
    }

    const std::size_t step = sequence_size - 1;
    std::vector<Segment> segments;
    std::size_t start = 0;
    while (start + step <= n - 1) {
        segments.push_back({series.slice(start, start + step), start, start + step});
        start += step;
    }
    if (start < n - 1) {
        const std::size_t leftover = n - start;  // points in [start, n-1]
        if (leftover >= 3 || segments.empty()) {
            segments.push_back({series.slice(start, n - 1), start, n - 1});
        } else {
            Segment& prev = segments.back();
            prev.end_index = n - 1;
            prev.points = series.slice(prev.start_index, n - 1);
        }
    }
    return segments;
}

/// Wraps raw nodes as an interpolated series with no generated points.
[[nodiscard]] inline InterpolatedSeries as_interpolated(const TimeSeries& nodes) {
    InterpolatedSeries out;
    out.points = nodes;
    out.node_indices.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) out.node_indices.push_back(i);
    out.n_interpolation = 0;
    return out;
}

/// Concatenates interpolated segments, keeping each shared boundary once.
[[nodiscard]] inline TimeSeries reunite(std::span<const InterpolatedSeries> segments) {
    constexpr double kBoundaryTolerance = 1e-9;
    TimeSeries out;
    std::size_t total = 0;
    for (const auto& s : segments) total += s.points.size();
    out.reserve(total);
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const TimeSeries& pts = segments[k].points;
        if (pts.empty()) continue;
        std::size_t first = 0;
        if (!out.empty()) {
            const Point& a = out.back();
            const Point& b = pts.front();
            if (std::abs(a.x - b.x) > kBoundaryTolerance ||
                std::abs(a.y - b.y) > kBoundaryTolerance) {
                fail(ErrorCode::BoundaryMismatch,
                     "segment " + std::to_string(k) + " starts at (" + std::to_string(b.x) + ", " +
                         std::to_string(b.y) + ") but the previous one ends at (" +
                         std::to_string(a.x) + ", " + std::to_string(a.y) + ")");
            }
            first = 1;
        }
        for (std::size_t i = first; i < pts.size(); ++i) out.push_back(pts[i]);
    }
    return out;
}

}  // namespace fraug
