#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/metrics.hpp"
#include "fraug/pipeline/windows.hpp"

namespace fraug {

template <class P>
concept Forecaster = requires(const P& p, std::span<const double> window) {
    { p.predict(window) } -> std::convertible_to<double>;
    { p.input_width() } -> std::convertible_to<std::size_t>;
};

/// One prediction per window.
template <Forecaster P>
[[nodiscard]] std::vector<double> predict(const P& model, const SupervisedSet& data) {
    if (data.width != model.input_width()) {
        fail(ErrorCode::WindowWidthMismatch,
             "windows of width " + std::to_string(data.width) + ", model expects " +
                 std::to_string(model.input_width()));
    }
    std::vector<double> out;
    out.reserve(data.size());
    for (const auto& window : data.inputs) out.push_back(model.predict(window));
    return out;
}

template <Forecaster P>
[[nodiscard]] Metrics evaluate(const P& model, const SupervisedSet& data) {
    return metrics(predict(model, data), data.targets);
}

}  // namespace fraug
