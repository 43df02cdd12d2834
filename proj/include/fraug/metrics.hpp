#pragma once

#include <cmath>
#include <span>
#include <string>

#include "fraug/error.hpp"

namespace fraug {

struct Metrics {
    double rmse = 0.0;
    double mse = 0.0;
    double mae = 0.0;
};

[[nodiscard]] inline Metrics metrics(std::span<const double> predicted,
                                     std::span<const double> actual) {
    if (predicted.size() != actual.size()) {
        fail(ErrorCode::LengthMismatch, std::to_string(predicted.size()) + " predictions for " +
                                            std::to_string(actual.size()) + " targets");
    }
    if (predicted.empty()) fail(ErrorCode::EmptyInput, "no values to compare");
    double se = 0.0;
    double ae = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double diff = predicted[i] - actual[i];
        se += diff * diff;
        ae += std::abs(diff);
    }
    const auto n = static_cast<double>(predicted.size());
    Metrics m;
    m.mse = se / n;
    m.rmse = std::sqrt(m.mse);
    m.mae = ae / n;
    return m;
}

[[nodiscard]] inline double rmse(std::span<const double> predicted,
                                 std::span<const double> actual) {
    return metrics(predicted, actual).rmse;
}

}  // namespace fraug
