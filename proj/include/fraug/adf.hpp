#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "fraug/error.hpp"
#include "fraug/regression.hpp"

namespace fraug {

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t lags = 0;
    bool is_stationary = false;  ///< p_value < 0.05
};

inline constexpr double kStationarityLevel = 0.05;

/// Schwert's rule floor(12 (n/100)^(1/4)), capped so the regression keeps
/// residual degrees of freedom.
[[nodiscard]] inline std::size_t adf_lag_order(std::size_t n) {
    const auto schwert =
        static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
    const std::size_t cap = n / 2 >= 2 ? n / 2 - 2 : 0;
    return std::min(schwert, cap);
}

/**
 * MacKinnon (1994) response-surface p-value for the unit-root t statistic,
 * constant-only regression with one variable. Coefficients are the published
 * ones (the same table statsmodels ships as tau_c_smallp / tau_c_largep).
 */
[[nodiscard]] inline double mackinnon_p_value(double statistic) {
    constexpr double kTauMax = 2.74;
    constexpr double kTauMin = -18.83;
    constexpr double kTauStar = -1.61;
    constexpr double kSmall[] = {2.1659, 1.4412, 3.8269e-2};
    constexpr double kLarge[] = {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2};

    if (statistic > kTauMax) return 1.0;
    if (statistic < kTauMin) return 0.0;
    double z = 0.0;
    if (statistic <= kTauStar) {
        z = kSmall[0] + statistic * (kSmall[1] + statistic * kSmall[2]);
    } else {
        z = kLarge[0] + statistic * (kLarge[1] + statistic * (kLarge[2] + statistic * kLarge[3]));
    }
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

/**
 * @brief Augmented Dickey-Fuller test with a constant and no trend.
 *
 * Regresses dy_t on y_{t-1}, dy_{t-1} .. dy_{t-k} and a constant, with k from
 * adf_lag_order(). The statistic is the t ratio on y_{t-1}.
 *
 * @throws Error SeriesTooShort (fewer than 20 values), SingularRegression
 */
[[nodiscard]] inline AdfResult adf_test(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 20) {
        fail(ErrorCode::SeriesTooShort,
             "ADF test needs at least 20 values, got " + std::to_string(n));
    }
    const std::size_t k = adf_lag_order(n);
    const std::size_t rows = n - k - 1;
    const std::size_t cols = k + 2;

    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + k + 1;  // index of the differenced observation
        y(r) = values[t] - values[t - 1];
        x(r, 0) = values[t - 1];
        for (std::size_t j = 1; j <= k; ++j) {
            x(r, j) = values[t - j] - values[t - j - 1];
        }
        x(r, k + 1) = 1.0;
    }

    const OlsFit fit = ols(x, y);
    AdfResult result;
    result.lags = k;
    if (!(fit.std_errors(0) > 0.0)) {
        fail(ErrorCode::SingularRegression, "zero standard error on the lagged level");
    }
    result.statistic = fit.beta(0) / fit.std_errors(0);
    result.p_value = mackinnon_p_value(result.statistic);
    result.is_stationary = result.p_value < kStationarityLevel;
    return result;
}

}  // namespace fraug
