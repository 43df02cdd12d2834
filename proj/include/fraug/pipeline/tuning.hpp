#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/log.hpp"
#include "fraug/optimizer.hpp"
#include "fraug/pipeline/forecaster.hpp"
#include "fraug/pipeline/lstm.hpp"
#include "fraug/pipeline/windows.hpp"
#include "fraug/rng.hpp"

namespace fraug {

/// Hyperparameter search ranges for one dataset.
struct SearchBounds {
    std::size_t units_low = 2;
    std::size_t units_high = 64;
    std::size_t window_low = 1;
    std::size_t window_high = 1;
    double learning_rate_low = 1e-3;
    double learning_rate_high = 1e-1;
    std::size_t epochs = 150;
};

inline constexpr std::size_t kRawWindowCap = 15;
inline constexpr std::size_t kInterpolatedWindowCap = 100;
inline constexpr std::size_t kRawEpochs = 150;
inline constexpr std::size_t kInterpolatedEpochs = 25;

/**
 * Window ceiling min(x, floor(30 n / 100) - 1) with x = 15 for raw data and
 * 100 for interpolated data; epochs 150 raw, 25 interpolated.
 * @throws Error SeriesTooShort when the ceiling is below 1.
 */
[[nodiscard]] inline SearchBounds search_bounds(std::size_t n, bool interpolated) {
    const std::size_t thirty_percent = (30 * n) / 100;
    if (thirty_percent < 2) {
        fail(ErrorCode::SeriesTooShort,
             "dataset of " + std::to_string(n) + " values leaves no admissible window size");
    }
    SearchBounds b;
    b.window_high = std::min(interpolated ? kInterpolatedWindowCap : kRawWindowCap, thirty_percent - 1);
    b.epochs = interpolated ? kInterpolatedEpochs : kRawEpochs;
    return b;
}

struct TuneOptions {
    std::size_t trials = 50;
    std::size_t repeats = 5;
    std::uint64_t seed = 0;
    /// Extra caps on the search space; 0 leaves the default bound.
    std::size_t max_units = 0;
    std::size_t max_window = 0;
    /// Overrides the raw/interpolated epoch count when nonzero.
    std::size_t epochs = 0;
    double split_ratio = 0.7;
    /// Objective assigned to a trial whose training diverged.
    double divergence_penalty = 1e3;

    /// 10 trials, one fit each, at most 16 units and window 24.
    static TuneOptions lite(std::uint64_t seed = 0) {
        TuneOptions o;
        o.trials = 10;
        o.repeats = 1;
        o.seed = seed;
        o.max_units = 16;
        o.max_window = 24;
        return o;
    }
};

struct TuneResult {
    PredictorConfig config;
    double objective = 0.0;
    SearchBounds bounds;
    std::vector<TrialRecord> trials;
};

/// Test RMSE of one fit on a chronological split of already prepared values.
[[nodiscard]] inline double holdout_rmse(std::span<const double> values,
                                         const PredictorConfig& config, double split_ratio = 0.7) {
    const auto [train, test] = chronological_split(values, split_ratio);
    const auto model = LstmPredictor::train(make_windows(train, config.input_data_points), config);
    return evaluate(model, make_windows(test, config.input_data_points)).rmse;
}

/**
 * @brief TPE study over units, window width and learning rate.
 *
 * The learning rate is searched on a log10 scale. A trial's objective is the
 * mean test RMSE of `repeats` fits with derived seeds; a diverging fit scores
 * divergence_penalty instead of aborting the study.
 */
[[nodiscard]] inline TuneResult tune_hyperparameters(std::span<const double> values,
                                                     bool interpolated,
                                                     const TuneOptions& options = {}) {
    if (options.trials == 0 || options.repeats == 0) {
        fail(ErrorCode::InvalidArgument, "trials and repeats must be at least 1");
    }
    SearchBounds bounds = search_bounds(values.size(), interpolated);
    if (options.max_units != 0) bounds.units_high = std::clamp(options.max_units, bounds.units_low + 1, bounds.units_high);
    if (options.max_window != 0) bounds.window_high = std::min(bounds.window_high, options.max_window);
    if (options.epochs != 0) bounds.epochs = options.epochs;

    auto config_of = [&](Trial& trial) {
        PredictorConfig c;
        c.units = static_cast<std::size_t>(trial.suggest_int(
            "units", static_cast<std::int64_t>(bounds.units_low), static_cast<std::int64_t>(bounds.units_high)));
        c.input_data_points =
            bounds.window_high > bounds.window_low
                ? static_cast<std::size_t>(trial.suggest_int("input_data_points",
                                                             static_cast<std::int64_t>(bounds.window_low),
                                                             static_cast<std::int64_t>(bounds.window_high)))
                : bounds.window_low;
        c.learning_rate = std::pow(10.0, trial.suggest_float("log10_learning_rate",
                                                             std::log10(bounds.learning_rate_low),
                                                             std::log10(bounds.learning_rate_high)));
        c.epochs = bounds.epochs;
        return c;
    };

    Study study(Direction::Minimize, options.seed);
    const Trial& best = study.optimize(
        [&](Trial& trial) {
            PredictorConfig c = config_of(trial);
            double total = 0.0;
            for (std::size_t r = 0; r < options.repeats; ++r) {
                c.seed = derive_seed(derive_seed(options.seed, trial.index()), r);
                try {
                    total += holdout_rmse(values, c, options.split_ratio);
                } catch (const Error& ex) {
                    if (ex.code() != ErrorCode::NonFiniteLoss) throw;
                    log::info("trial " + std::to_string(trial.index()) + " diverged: " + ex.what());
                    total += options.divergence_penalty;
                }
            }
            return total / static_cast<double>(options.repeats);
        },
        options.trials);

    TuneResult result;
    result.bounds = bounds;
    result.objective = best.objective();
    result.config.units = static_cast<std::size_t>(best.param("units"));
    result.config.input_data_points =
        best.params().contains("input_data_points")
            ? static_cast<std::size_t>(best.param("input_data_points"))
            : bounds.window_low;
    result.config.learning_rate = std::pow(10.0, best.param("log10_learning_rate"));
    result.config.epochs = bounds.epochs;
    result.config.seed = options.seed;
    result.trials = history(study);
    return result;
}

}  // namespace fraug
