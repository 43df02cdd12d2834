#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/fif.hpp"
#include "fraug/hurst.hpp"
#include "fraug/log.hpp"
#include "fraug/metrics.hpp"
#include "fraug/optimizer.hpp"
#include "fraug/rng.hpp"
#include "fraug/segmentation.hpp"
#include "fraug/time_series.hpp"

namespace fraug {

enum class StrategyKind { Chs, Cvs, Fs, Linear };

constexpr std::string_view to_string(StrategyKind kind) noexcept {
    switch (kind) {
        case StrategyKind::Chs: return "chs";
        case StrategyKind::Cvs: return "cvs";
        case StrategyKind::Fs: return "fs";
        case StrategyKind::Linear: return "linear";
    }
    return "unknown";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view name) {
    if (name == "chs") return StrategyKind::Chs;
    if (name == "cvs") return StrategyKind::Cvs;
    if (name == "fs") return StrategyKind::Fs;
    if (name == "linear") return StrategyKind::Linear;
    return std::nullopt;
}

/// Settings for one augmentation run.
struct StrategyConfig {
    StrategyKind kind = StrategyKind::Cvs;
    std::size_t n_interpolation = kDefaultInterpolationPoints;
    /// Segment length; 0 asks FS to pick it with optimize_sequence_size().
    std::size_t sequence_size = 10;
    /// Range for the constant scaling factor drawn by CHS and searched by CVS.
    double s_low = -1.0;
    double s_high = 1.0;
    std::size_t iterations = 15;        ///< CHS candidates per segment
    std::size_t trials = 15;            ///< CVS study length per segment
    std::size_t sequence_trials = 50;   ///< FS sequence-size study length
    std::uint64_t seed = 0;
    bool strict = false;

    friend bool operator==(const StrategyConfig&, const StrategyConfig&) = default;
};

inline void validate(const StrategyConfig& config) {
    if (config.n_interpolation < 1) fail(ErrorCode::InvalidArgument, "n_interpolation must be >= 1");
    if (config.iterations < 1) fail(ErrorCode::InvalidArgument, "iterations must be >= 1");
    if (config.trials < 1 || config.sequence_trials < 1) {
        fail(ErrorCode::InvalidArgument, "trial counts must be >= 1");
    }
    if (!(config.s_low < config.s_high) || config.s_low < -1.0 || config.s_high > 1.0) {
        fail(ErrorCode::InvalidRange, "scaling range must be a non-empty subset of [-1, 1]");
    }
    if (config.sequence_size == 0 && config.kind != StrategyKind::Fs) {
        fail(ErrorCode::InvalidArgument, "only FS can optimize the sequence size");
    }
    if (config.sequence_size != 0 && config.sequence_size < 3) {
        fail(ErrorCode::InvalidArgument, "sequence_size must be at least 3");
    }
}

struct ScalingVector {
    std::vector<double> values;
    bool constant = false;
    /// Intervals whose factor was clamped to +/-kMaxScaling.
    std::vector<std::size_t> clamped;
};

[[nodiscard]] inline double clamp_scaling(double s) {
    return std::clamp(s, -kMaxScaling, kMaxScaling);
}

[[nodiscard]] inline ScalingVector constant_scaling(std::size_t intervals, double s) {
    return {std::vector<double>(intervals, clamp_scaling(s)), true, {}};
}

/// n evenly spaced points per gap on the piecewise-linear interpolant.
[[nodiscard]] inline InterpolatedSeries linear_interpolation(const TimeSeries& segment,
                                                             std::size_t n_interpolation) {
    if (segment.size() < 2) fail(ErrorCode::SegmentTooShort, "need at least 2 points");
    require_strictly_increasing(segment);
    InterpolatedSeries out;
    out.n_interpolation = n_interpolation;
    TimeSeries pts;
    pts.reserve((segment.size() - 1) * (n_interpolation + 1) + 1);
    for (std::size_t i = 1; i < segment.size(); ++i) {
        const Point& lo = segment[i - 1];
        const Point& hi = segment[i];
        out.node_indices.push_back(pts.size());
        pts.push_back(lo);
        for (std::size_t j = 1; j <= n_interpolation; ++j) {
            const double t = static_cast<double>(j) / static_cast<double>(n_interpolation + 1);
            pts.push_back({lo.x + t * (hi.x - lo.x), lo.y + t * (hi.y - lo.y)});
        }
    }
    out.node_indices.push_back(pts.size());
    pts.push_back(segment.back());
    out.points = std::move(pts);
    return out;
}

/// RMSE between the series and the segment's linear interpolant at the same x.
[[nodiscard]] inline double rmse_to_linear(const TimeSeries& segment,
                                           const InterpolatedSeries& interpolated) {
    const auto xs = interpolated.points.xs();
    const auto ys = interpolated.points.ys();
    return rmse(ys, evaluate_linear(segment, xs));
}

/// Largest |y - linear(x)| over the series.
[[nodiscard]] inline double max_deviation_from_linear(const TimeSeries& nodes,
                                                      const TimeSeries& series) {
    const auto xs = series.xs();
    const auto lin = evaluate_linear(nodes, xs);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(series[i].y - lin[i]));
    return worst;
}

// ---------------------------------------------------------------------------
// Closest Hurst Strategy

struct ChsCandidate {
    double s = 0.0;
    double hurst = 0.0;
    double distance = 0.0;
};

struct ChsResult {
    InterpolatedSeries series;
    double s = 0.0;
    double initial_hurst = 0.0;
    std::vector<ChsCandidate> candidates;
    std::size_t best_index = 0;
};

namespace detail {

inline double hurst_of(std::span<const double> values) {
    return values.size() >= HurstOptions{}.min_length ? hurst_exponent(values).h
                                                      : hurst_exponent(values, kRelaxedHurst).h;
}

/// Hurst exponent of a raw segment. Segments shorter than the relaxed
/// estimator's minimum are measured on their linear densification.
inline double initial_hurst(const TimeSeries& segment, std::size_t n_interpolation) {
    if (segment.size() >= kRelaxedHurst.min_length) {
        return hurst_exponent(segment.ys(), kRelaxedHurst).h;
    }
    const auto dense = linear_interpolation(segment, std::max<std::size_t>(n_interpolation, 9));
    return hurst_of(dense.points.ys());
}

}  // namespace detail

/**
 * @brief Closest Hurst Strategy for one segment.
 *
 * Draws `iterations` constant scaling factors uniformly from [s_low, s_high]
 * and keeps the interpolant whose Hurst exponent is nearest the segment's
 * own. A new factor is drawn on every iteration.
 */
[[nodiscard]] inline ChsResult chs(const TimeSeries& segment, const StrategyConfig& config) {
    validate(config);
    if (segment.size() < 3) fail(ErrorCode::SegmentTooShort, "CHS needs at least 3 points");
    const std::size_t intervals = segment.size() - 1;

    ChsResult result;
    result.initial_hurst = detail::initial_hurst(segment, config.n_interpolation);
    Rng rng(config.seed);
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < config.iterations; ++k) {
        const double s = clamp_scaling(rng.uniform(config.s_low, config.s_high));
        const auto scaling = constant_scaling(intervals, s);
        InterpolatedSeries candidate = generate_fif(segment, scaling.values, config.n_interpolation);
        const double h = detail::hurst_of(candidate.points.ys());
        const double distance = std::abs(h - result.initial_hurst);
        result.candidates.push_back({s, h, distance});
        if (k == 0 || distance < best_distance) {
            best_distance = distance;
            result.best_index = k;
            result.s = s;
            result.series = std::move(candidate);
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Closest Values Strategy

struct CvsResult {
    InterpolatedSeries series;
    double s = 0.0;
    double objective = 0.0;
    /// (s, RMSE) for every trial in order.
    std::vector<std::pair<double, double>> history;
};

/**
 * @brief Closest Values Strategy for one segment.
 *
 * A minimizing study over a constant s in [s_low, s_high]; each trial scores
 * the fractal interpolant by its RMSE against the linear interpolant at the
 * same abscissae. The result is regenerated from the best trial's s.
 */
[[nodiscard]] inline CvsResult cvs(const TimeSeries& segment, const StrategyConfig& config) {
    validate(config);
    if (segment.size() < 3) fail(ErrorCode::SegmentTooShort, "CVS needs at least 3 points");
    const std::size_t intervals = segment.size() - 1;

    Study study(Direction::Minimize, config.seed);
    const Trial& best = study.optimize(
        [&](Trial& trial) {
            const double s = clamp_scaling(trial.suggest_float("s", config.s_low, config.s_high));
            const auto scaling = constant_scaling(intervals, s);
            return rmse_to_linear(segment,
                                  generate_fif(segment, scaling.values, config.n_interpolation));
        },
        config.trials);

    CvsResult result;
    result.s = clamp_scaling(best.param("s"));
    result.objective = best.objective();
    for (const auto& t : study.trials()) result.history.emplace_back(t.param("s"), t.objective());
    result.series =
        generate_fif(segment, constant_scaling(intervals, result.s).values, config.n_interpolation);
    return result;
}

// ---------------------------------------------------------------------------
// Formula Strategy

/**
 * @brief Per-interval scaling factors
 *
 *     s_i = (y_i - y_{i-1}) / sqrt((y_N - y_0)^2 + (y_i - y_{i-1})^2)
 *
 * When y_N == y_0 every non-flat interval gets |s_i| = 1, which is clamped to
 * kMaxScaling with a warning. A flat interval in that case is 0/0 and gets 0.
 *
 * @throws Error AllPointsEqual when every factor is 0/0.
 */
[[nodiscard]] inline ScalingVector fs_scaling(const TimeSeries& segment, bool warn_on_clamp = true) {
    if (segment.size() < 3) fail(ErrorCode::SegmentTooShort, "FS needs at least 3 points");
    const double span = segment.back().y - segment.front().y;
    ScalingVector out;
    out.constant = false;
    bool any_defined = false;
    for (std::size_t i = 1; i < segment.size(); ++i) {
        const double rise = segment[i].y - segment[i - 1].y;
        const double denom = std::sqrt(span * span + rise * rise);
        if (denom == 0.0) {
            out.values.push_back(0.0);
            continue;
        }
        any_defined = true;
        const double s = rise / denom;
        if (std::abs(s) > kMaxScaling) out.clamped.push_back(i);
        out.values.push_back(clamp_scaling(s));
    }
    if (!any_defined) fail(ErrorCode::AllPointsEqual, "every point of the segment has the same value");
    if (warn_on_clamp && !out.clamped.empty()) {
        log::warn("FS scaling clamped to +/-(1 - 1e-6) on " + std::to_string(out.clamped.size()) +
                  " interval(s): segment starts and ends at the same value (y = " +
                  std::to_string(segment.front().y) + ")");
    }
    return out;
}

[[nodiscard]] inline InterpolatedSeries fs(const TimeSeries& segment,
                                           std::size_t n_interpolation = kDefaultInterpolationPoints,
                                           bool warn_on_clamp = true) {
    const ScalingVector scaling = fs_scaling(segment, warn_on_clamp);
    return generate_fif(segment, scaling.values, n_interpolation);
}

/// Sum over non-strict segments of the FS interpolant's RMSE to linear.
/// Clamping is routine while searching sizes, so no warnings are logged.
[[nodiscard]] inline double fs_total_rmse(const TimeSeries& series, std::size_t sequence_size,
                                          std::size_t n_interpolation) {
    double total = 0.0;
    for (const auto& seg : split(series, sequence_size, false)) {
        try {
            total += rmse_to_linear(seg.points, fs(seg.points, n_interpolation, false));
        } catch (const Error& ex) {
            // A flat segment interpolates to its own line for every s.
            if (ex.code() != ErrorCode::AllPointsEqual) throw;
        }
    }
    return total;
}

struct SequenceSizeResult {
    std::size_t sequence_size = 0;
    double total_rmse = 0.0;
    /// (sequence_size, total RMSE) per trial.
    std::vector<std::pair<std::size_t, double>> history;
};

/**
 * @brief Picks the FS segment length by a minimizing study over
 * [4, length - 3], splitting non-strict and summing per-segment RMSE.
 */
[[nodiscard]] inline SequenceSizeResult optimize_sequence_size(const TimeSeries& series,
                                                               std::size_t n_interpolation,
                                                               std::size_t trials = 50,
                                                               std::uint64_t seed = 0) {
    if (series.size() < 8) {
        fail(ErrorCode::SeriesTooShort, "sequence-size search needs at least 8 points, got " +
                                            std::to_string(series.size()));
    }
    require_strictly_increasing(series);
    const auto high = static_cast<std::int64_t>(series.size()) - 3;

    Study study(Direction::Minimize, seed);
    const Trial& best = study.optimize(
        [&](Trial& trial) {
            const auto size = static_cast<std::size_t>(trial.suggest_int("sequence_size", 4, high));
            return fs_total_rmse(series, size, n_interpolation);
        },
        trials);

    SequenceSizeResult result;
    result.sequence_size = static_cast<std::size_t>(best.param("sequence_size"));
    result.total_rmse = best.objective();
    for (const auto& t : study.trials()) {
        result.history.emplace_back(static_cast<std::size_t>(t.param("sequence_size")),
                                    t.objective());
    }
    return result;
}

// ---------------------------------------------------------------------------
// Whole-series driver

struct SegmentReport {
    std::size_t start_index = 0;
    std::size_t end_index = 0;
    std::vector<double> scaling;  ///< empty for Linear
    /// CHS: Hurst distance; CVS: best RMSE; FS: RMSE to linear; Linear: 0.
    double score = 0.0;
};

struct AugmentResult {
    TimeSeries series;
    std::size_t sequence_size = 0;
    std::optional<SequenceSizeResult> sequence_search;
    std::vector<SegmentReport> segments;
};

/**
 * @brief split -> per-segment strategy -> reunite.
 *
 * Segment k runs with seed derive_seed(config.seed, k), so segments are
 * independent of each other's randomness.
 */
[[nodiscard]] inline AugmentResult augment(const TimeSeries& series, const StrategyConfig& config) {
    validate(config);
    require_strictly_increasing(series);

    AugmentResult result;
    result.sequence_size = config.sequence_size;
    if (result.sequence_size == 0) {
        result.sequence_search = optimize_sequence_size(series, config.n_interpolation,
                                                        config.sequence_trials, config.seed);
        result.sequence_size = result.sequence_search->sequence_size;
    }

    const auto segments = split(series, result.sequence_size, config.strict);
    std::vector<InterpolatedSeries> pieces;
    pieces.reserve(segments.size());
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const TimeSeries& seg = segments[k].points;
        StrategyConfig local = config;
        local.seed = derive_seed(config.seed, k);
        SegmentReport report{segments[k].start_index, segments[k].end_index, {}, 0.0};
        switch (config.kind) {
            case StrategyKind::Chs: {
                auto r = chs(seg, local);
                report.scaling.assign(seg.size() - 1, r.s);
                report.score = r.candidates[r.best_index].distance;
                pieces.push_back(std::move(r.series));
                break;
            }
            case StrategyKind::Cvs: {
                auto r = cvs(seg, local);
                report.scaling.assign(seg.size() - 1, r.s);
                report.score = r.objective;
                pieces.push_back(std::move(r.series));
                break;
            }
            case StrategyKind::Fs: {
                const auto scaling = fs_scaling(seg);
                auto interp = generate_fif(seg, scaling.values, config.n_interpolation);
                report.scaling = scaling.values;
                report.score = rmse_to_linear(seg, interp);
                pieces.push_back(std::move(interp));
                break;
            }
            case StrategyKind::Linear:
                pieces.push_back(linear_interpolation(seg, config.n_interpolation));
                break;
        }
        result.segments.push_back(std::move(report));
    }
    result.series = reunite(pieces);
    return result;
}

}  // namespace fraug
