#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/metrics.hpp"
#include "fraug/pipeline/ar_baseline.hpp"
#include "fraug/pipeline/forecaster.hpp"
#include "fraug/pipeline/lstm.hpp"
#include "fraug/pipeline/normalize.hpp"
#include "fraug/pipeline/transform.hpp"
#include "fraug/pipeline/tuning.hpp"
#include "fraug/pipeline/windows.hpp"
#include "fraug/strategies.hpp"
#include "fraug/time_series.hpp"

namespace fraug {

struct ForecastOptions {
    /// Augment before forecasting; absent means raw data.
    std::optional<StrategyConfig> augmentation;
    /// Fixed hyperparameters; absent means tune them first.
    std::optional<PredictorConfig> config;
    TuneOptions tune;
    double split_ratio = 0.7;
    bool select_transform = true;
    double ar_ridge = 1e-6;
};

struct ForecastReport {
    std::size_t input_length = 0;
    std::size_t series_length = 0;
    std::optional<std::size_t> sequence_size;
    TransformRecord transform;
    NormParams normalization;
    std::size_t train_length = 0;
    std::size_t test_length = 0;
    PredictorConfig config;
    std::optional<TuneResult> tuning;
    Metrics lstm_train;
    Metrics lstm_test;
    Metrics ar_train;
    Metrics ar_test;
    std::vector<double> loss_history;
    LstmWeights weights;
    std::vector<double> ar_coefficients;
    double ar_intercept = 0.0;
    /// Test-window predictions and targets in normalized space.
    std::vector<double> test_predictions;
    std::vector<double> test_targets;
};

/**
 * @brief Augment, transform, normalize to [0, 1], split, window, train, evaluate.
 *
 * Metrics are in normalized space. The AR baseline is fitted on the same
 * training windows as the recurrent model.
 */
[[nodiscard]] inline ForecastReport run_forecast(const TimeSeries& series,
                                                 const ForecastOptions& options) {
    if (series.size() < 10) {
        fail(ErrorCode::SeriesTooShort,
             "forecasting needs at least 10 values, got " + std::to_string(series.size()));
    }
    ForecastReport report;
    report.input_length = series.size();

    std::vector<double> values;
    if (options.augmentation) {
        auto augmented = augment(series, *options.augmentation);
        report.sequence_size = augmented.sequence_size;
        values = augmented.series.ys();
    } else {
        values = series.ys();
    }
    report.series_length = values.size();
    const bool interpolated = options.augmentation.has_value();

    TransformMethod method = TransformMethod::None;
    if (options.select_transform && values.size() >= 20) method = select_transform(values);
    auto transformed = apply_transform(values, method);
    report.transform = transformed.record;

    auto normalized = normalize(transformed.values, 0.0, 1.0);
    report.normalization = normalized.params;

    if (options.config) {
        report.config = *options.config;
    } else {
        TuneOptions tune = options.tune;
        tune.split_ratio = options.split_ratio;
        report.tuning = tune_hyperparameters(normalized.values, interpolated, tune);
        report.config = report.tuning->config;
    }

    const auto [train, test] = chronological_split(normalized.values, options.split_ratio);
    report.train_length = train.size();
    report.test_length = test.size();
    const auto train_set = make_windows(train, report.config.input_data_points);
    const auto test_set = make_windows(test, report.config.input_data_points);

    const auto lstm = LstmPredictor::train(train_set, report.config);
    report.lstm_train = evaluate(lstm, train_set);
    report.test_predictions = predict(lstm, test_set);
    report.test_targets = test_set.targets;
    report.lstm_test = metrics(report.test_predictions, report.test_targets);
    report.loss_history = lstm.loss_history();
    report.weights = lstm.weights();

    const auto ar = ArPredictor::fit(train_set, options.ar_ridge);
    report.ar_train = evaluate(ar, train_set);
    report.ar_test = evaluate(ar, test_set);
    report.ar_coefficients = ar.coefficients();
    report.ar_intercept = ar.intercept();
    return report;
}

}  // namespace fraug
