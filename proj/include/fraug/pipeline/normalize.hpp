#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "fraug/error.hpp"

namespace fraug {

struct NormParams {
    double data_min = 0.0;
    double data_max = 0.0;
    double a = 0.0;
    double b = 1.0;
    /// Constant input: every value went to (a + b) / 2 and cannot be inverted.
    bool degenerate = false;

    friend bool operator==(const NormParams&, const NormParams&) = default;
};

struct Normalized {
    std::vector<double> values;
    NormParams params;
};

/// Min-max scaling of [min, max] onto [a, b].
[[nodiscard]] inline Normalized normalize(std::span<const double> values, double a = 0.0,
                                          double b = 1.0) {
    if (values.empty()) fail(ErrorCode::EmptyInput, "nothing to normalize");
    if (!(b > a)) fail(ErrorCode::InvalidRange, "target interval must satisfy b > a");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    Normalized out;
    out.params = {*lo, *hi, a, b, *lo == *hi};
    out.values.reserve(values.size());
    if (out.params.degenerate) {
        out.values.assign(values.size(), 0.5 * (a + b));
        return out;
    }
    const double range = *hi - *lo;
    for (double v : values) out.values.push_back((b - a) * (v - *lo) / range + a);
    return out;
}

[[nodiscard]] inline std::vector<double> denormalize(std::span<const double> values,
                                                     const NormParams& params) {
    if (params.degenerate) {
        fail(ErrorCode::DegenerateInverse, "constant input cannot be recovered from its scaling");
    }
    const double range = params.data_max - params.data_min;
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        out.push_back((v - params.a) / (params.b - params.a) * range + params.data_min);
    }
    return out;
}

}  // namespace fraug
