#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/regression.hpp"

namespace fraug {

struct HurstEstimate {
    double h = 0.0;
    std::vector<std::size_t> window_sizes;
    std::vector<double> rs_values;
    double regression_r2 = 0.0;
};

struct HurstOptions {
    std::size_t min_window = 8;
    std::size_t min_length = 20;
    std::size_t max_sizes = 10;
};

/// Settings for short raw segments: windows from 4 (lowered to 2 when needed).
inline constexpr HurstOptions kRelaxedHurst{4, 10, 10};

namespace detail {

/// Mean rescaled range over the non-overlapping windows of one size.
inline double mean_rescaled_range(std::span<const double> values, std::size_t w) {
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t start = 0; start + w <= values.size(); start += w) {
        const auto win = values.subspan(start, w);
        double mean = 0.0;
        for (double v : win) mean += v;
        mean /= static_cast<double>(w);
        double var = 0.0;
        double run = 0.0;
        double hi = 0.0;
        double lo = 0.0;
        for (std::size_t t = 0; t < w; ++t) {
            const double dev = win[t] - mean;
            var += dev * dev;
            run += dev;
            hi = std::max(hi, run);
            lo = std::min(lo, run);
        }
        const double sd = std::sqrt(var / static_cast<double>(w));
        if (sd > 0.0) {
            total += (hi - lo) / sd;
            ++used;
        }
    }
    return used > 0 ? total / static_cast<double>(used) : 0.0;
}

}  // namespace detail

/**
 * @brief Hurst exponent by rescaled-range (R/S) analysis.
 *
 * Window sizes are spaced geometrically over [min_window, n/2]; when that
 * range holds fewer than four sizes its lower end drops (not below 2). For
 * each size the series is cut into non-overlapping windows, each window's
 * mean-adjusted cumulative range is divided by its standard deviation, and the
 * ratios are averaged. The exponent is the slope of log(R/S) on log(size).
 *
 * @throws Error SeriesTooShortForHurst, ConstantSeries
 */
[[nodiscard]] inline HurstEstimate hurst_exponent(std::span<const double> values,
                                                  const HurstOptions& options = {}) {
    const std::size_t n = values.size();
    if (n < options.min_length || n < 8) {
        fail(ErrorCode::SeriesTooShortForHurst,
             "need at least " + std::to_string(std::max<std::size_t>(options.min_length, 8)) +
                 " values, got " + std::to_string(n));
    }
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (*mn == *mx) fail(ErrorCode::ConstantSeries, "series has zero variance");

    const std::size_t hi = n / 2;
    std::size_t lo = std::min(options.min_window, hi);
    if (hi - lo + 1 < 4) lo = hi >= 5 ? hi - 3 : 2;
    lo = std::max<std::size_t>(lo, 2);

    const std::size_t count = std::min(options.max_sizes, hi - lo + 1);
    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k < count; ++k) {
        const double frac = count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
        const auto w = static_cast<std::size_t>(
            std::lround(static_cast<double>(lo) *
                        std::pow(static_cast<double>(hi) / static_cast<double>(lo), frac)));
        if (sizes.empty() || w != sizes.back()) sizes.push_back(w);
    }

    HurstEstimate est;
    std::vector<double> log_w;
    std::vector<double> log_rs;
    for (std::size_t w : sizes) {
        const double rs = detail::mean_rescaled_range(values, w);
        if (rs <= 0.0) continue;
        est.window_sizes.push_back(w);
        est.rs_values.push_back(rs);
        log_w.push_back(std::log(static_cast<double>(w)));
        log_rs.push_back(std::log(rs));
    }
    if (log_w.size() < 2) {
        fail(ErrorCode::SeriesTooShortForHurst, "fewer than two usable window sizes");
    }
    const LineFit fit = fit_line(log_w, log_rs);
    est.h = fit.slope;
    est.regression_r2 = fit.r2;
    return est;
}

}  // namespace fraug
