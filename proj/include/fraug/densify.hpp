#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/fif.hpp"
#include "fraug/metrics.hpp"
#include "fraug/strategies.hpp"
#include "fraug/synthetic.hpp"
#include "fraug/time_series.hpp"

namespace fraug {

/**
 * Value of an augmentation's interpolant at each of xs. Fractal segments are
 * evaluated exactly through their maps, Linear segments piecewise linearly;
 * an x on a shared boundary belongs to the earlier segment.
 */
[[nodiscard]] inline std::vector<double> evaluate_augmented(const TimeSeries& series,
                                                            const AugmentResult& result,
                                                            std::span<const double> xs) {
    std::vector<FifModel> models;
    std::vector<TimeSeries> pieces;
    for (const auto& seg : result.segments) {
        pieces.push_back(series.slice(seg.start_index, seg.end_index));
        if (!seg.scaling.empty()) models.push_back(compute_coefficients(pieces.back(), seg.scaling));
        else models.emplace_back();
    }
    std::vector<double> out;
    out.reserve(xs.size());
    std::size_t k = 0;
    for (double x : xs) {
        if (x < series.front().x || x > series.back().x) {
            fail(ErrorCode::AbscissaOutOfRange, "x = " + std::to_string(x) + " outside the series");
        }
        while (k + 1 < pieces.size() && x > pieces[k].back().x) ++k;
        while (k > 0 && x <= pieces[k - 1].back().x) --k;
        if (models[k].maps.empty()) {
            const double xv[] = {x};
            out.push_back(evaluate_linear(pieces[k], xv).front());
        } else {
            out.push_back(evaluate_fif(models[k], x));
        }
    }
    return out;
}

struct DensifyResult {
    TimeSeries coarse;
    /// Interpolant at every ground-truth abscissa.
    TimeSeries densified;
    /// Mean absolute error over the ground-truth points between coarse nodes.
    double mae = 0.0;
    AugmentResult augmentation;
};

/**
 * @brief Interpolates `coarse` at the abscissae of `truth` with
 * n_interpolation = factor - 1 and scores it against `truth`.
 *
 * truth must hold (coarse.size() - 1) * factor + 1 points with every
 * factor-th point equal to the matching coarse point. Factor 1 is the
 * identity.
 * @throws Error FactorMismatch
 */
[[nodiscard]] inline DensifyResult densify(const TimeSeries& coarse, const TimeSeries& truth,
                                           std::size_t factor, StrategyConfig config) {
    if (factor == 0) fail(ErrorCode::FactorMismatch, "factor must be at least 1");
    if (coarse.size() < 2 || truth.size() != (coarse.size() - 1) * factor + 1) {
        fail(ErrorCode::FactorMismatch,
             "ground truth has " + std::to_string(truth.size()) + " points; factor " +
                 std::to_string(factor) + " on " + std::to_string(coarse.size()) +
                 " coarse points needs " + std::to_string((coarse.size() - 1) * factor + 1));
    }
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        const Point& fine = truth[k * factor];
        if (std::abs(fine.x - coarse[k].x) > 1e-9 * (1.0 + std::abs(fine.x)) ||
            std::abs(fine.y - coarse[k].y) > 1e-9 * (1.0 + std::abs(fine.y))) {
            fail(ErrorCode::FactorMismatch, "ground-truth point " + std::to_string(k * factor) +
                                                " does not match coarse point " + std::to_string(k));
        }
    }

    DensifyResult result;
    result.coarse = coarse;
    if (factor == 1) {
        result.densified = truth;
        return result;
    }
    config.n_interpolation = factor - 1;
    result.augmentation = augment(coarse, config);
    const auto xs = truth.xs();
    const auto ys = evaluate_augmented(coarse, result.augmentation, xs);
    std::vector<double> predicted;
    std::vector<double> actual;
    TimeSeries dense;
    dense.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        dense.push_back({xs[i], ys[i]});
        if (i % factor == 0) continue;
        predicted.push_back(ys[i]);
        actual.push_back(truth[i].y);
    }
    result.densified = std::move(dense);
    result.mae = metrics(predicted, actual).mae;
    return result;
}

/// densify() against `truth` downsampled by `factor`, dropping any tail
/// beyond the last coarse point.
[[nodiscard]] inline DensifyResult densify(const TimeSeries& truth, std::size_t factor,
                                           const StrategyConfig& config) {
    if (factor == 0) fail(ErrorCode::FactorMismatch, "factor must be at least 1");
    const TimeSeries coarse = synthetic::downsample(truth, factor);
    return densify(coarse, truth.slice(0, (coarse.size() - 1) * factor), factor, config);
}

}  // namespace fraug
