#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fraug/adf.hpp"
#include "fraug/error.hpp"
#include "fraug/regression.hpp"

namespace fraug {

enum class TransformMethod { None, Log, Sqrt, LinearDetrend };

constexpr std::string_view to_string(TransformMethod m) noexcept {
    switch (m) {
        case TransformMethod::None: return "none";
        case TransformMethod::Log: return "log";
        case TransformMethod::Sqrt: return "sqrt";
        case TransformMethod::LinearDetrend: return "linear_detrend";
    }
    return "unknown";
}

struct TransformRecord {
    TransformMethod method = TransformMethod::None;
    /// Trend fitted on the index for LinearDetrend.
    double slope = 0.0;
    double intercept = 0.0;
    /// Present when the series is long enough for the ADF test.
    std::optional<AdfResult> adf_before;
    std::optional<AdfResult> adf_after;
};

struct Transformed {
    std::vector<double> values;
    TransformRecord record;
};

namespace detail {

inline std::optional<AdfResult> try_adf(std::span<const double> values) {
    if (values.size() < 20) return std::nullopt;
    try {
        return adf_test(values);
    } catch (const Error& ex) {
        if (ex.code() == ErrorCode::SingularRegression) return std::nullopt;
        throw;
    }
}

}  // namespace detail

/// @throws Error DomainViolation for Log on values <= 0 or Sqrt on values < 0.
[[nodiscard]] inline Transformed apply_transform(std::span<const double> values,
                                                 TransformMethod method) {
    Transformed out;
    out.record.method = method;
    out.values.reserve(values.size());
    switch (method) {
        case TransformMethod::None:
            out.values.assign(values.begin(), values.end());
            break;
        case TransformMethod::Log:
            for (double v : values) {
                if (!(v > 0.0)) fail(ErrorCode::DomainViolation, "log of non-positive value " + std::to_string(v));
                out.values.push_back(std::log(v));
            }
            break;
        case TransformMethod::Sqrt:
            for (double v : values) {
                if (v < 0.0) fail(ErrorCode::DomainViolation, "square root of negative value " + std::to_string(v));
                out.values.push_back(std::sqrt(v));
            }
            break;
        case TransformMethod::LinearDetrend: {
            std::vector<double> index(values.size());
            for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
            const LineFit fit = fit_line(index, values);
            out.record.slope = fit.slope;
            out.record.intercept = fit.intercept;
            for (std::size_t i = 0; i < values.size(); ++i) {
                out.values.push_back(values[i] - (fit.intercept + fit.slope * static_cast<double>(i)));
            }
            break;
        }
    }
    out.record.adf_before = detail::try_adf(values);
    out.record.adf_after =
        method == TransformMethod::None ? out.record.adf_before : detail::try_adf(out.values);
    return out;
}

/// Inverse of apply_transform; first_index is the position of values[0] in
/// the series the trend was fitted on.
[[nodiscard]] inline std::vector<double> invert_transform(std::span<const double> values,
                                                          const TransformRecord& record,
                                                          std::size_t first_index = 0) {
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        switch (record.method) {
            case TransformMethod::None: out.push_back(v); break;
            case TransformMethod::Log: out.push_back(std::exp(v)); break;
            case TransformMethod::Sqrt: out.push_back(v * v); break;
            case TransformMethod::LinearDetrend:
                out.push_back(v + record.intercept +
                              record.slope * static_cast<double>(first_index + i));
                break;
        }
    }
    return out;
}

/**
 * @brief Chooses the stationarity transform for a series.
 *
 * None when the raw ADF p-value is already below 0.05; otherwise whichever
 * admissible transform (Log and Sqrt need positive / non-negative data) gives
 * the lowest ADF p-value afterwards.
 */
[[nodiscard]] inline TransformMethod select_transform(std::span<const double> values) {
    const AdfResult raw = adf_test(values);
    if (raw.is_stationary) return TransformMethod::None;

    bool all_positive = true;
    bool all_non_negative = true;
    for (double v : values) {
        all_positive = all_positive && v > 0.0;
        all_non_negative = all_non_negative && v >= 0.0;
    }
    std::vector<TransformMethod> candidates;
    if (all_positive) candidates.push_back(TransformMethod::Log);
    if (all_non_negative) candidates.push_back(TransformMethod::Sqrt);
    candidates.push_back(TransformMethod::LinearDetrend);

    TransformMethod best = TransformMethod::None;
    double best_p = raw.p_value;
    for (auto method : candidates) {
        const auto result = apply_transform(values, method);
        if (result.record.adf_after && result.record.adf_after->p_value < best_p) {
            best_p = result.record.adf_after->p_value;
            best = method;
        }
    }
    return best;
}

}  // namespace fraug
