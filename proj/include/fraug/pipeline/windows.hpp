#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fraug/error.hpp"

namespace fraug {

/// Sliding-window supervised framing: inputs[i] = values[i .. i+w-1],
/// targets[i] = values[i+w].
struct SupervisedSet {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    std::size_t width = 0;

    [[nodiscard]] std::size_t size() const noexcept { return targets.size(); }
    [[nodiscard]] bool empty() const noexcept { return targets.empty(); }
};

[[nodiscard]] inline SupervisedSet make_windows(std::span<const double> values,
                                                std::size_t input_data_points) {
    if (input_data_points == 0) fail(ErrorCode::InvalidArgument, "window width must be >= 1");
    if (input_data_points >= values.size()) {
        fail(ErrorCode::WindowTooLarge, "window of " + std::to_string(input_data_points) +
                                            " needs more than " + std::to_string(values.size()) +
                                            " values");
    }
    SupervisedSet set;
    set.width = input_data_points;
    const std::size_t count = values.size() - input_data_points;
    set.inputs.reserve(count);
    set.targets.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        set.inputs.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i),
                                values.begin() + static_cast<std::ptrdiff_t>(i + input_data_points));
        set.targets.push_back(values[i + input_data_points]);
    }
    return set;
}

/// First ceil(ratio * n) values for training, the rest for testing, in order.
[[nodiscard]] inline std::pair<std::vector<double>, std::vector<double>> chronological_split(
    std::span<const double> values, double ratio = 0.7) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        fail(ErrorCode::InvalidArgument, "split ratio must lie strictly between 0 and 1");
    }
    if (values.size() < 10) {
        fail(ErrorCode::SeriesTooShort,
             "chronological split needs at least 10 values, got " + std::to_string(values.size()));
    }
    const auto n = static_cast<double>(values.size());
    // The epsilon keeps 0.7 * 10 from rounding up to 8.
    auto train = static_cast<std::size_t>(std::ceil(ratio * n - 1e-9));
    train = std::min(train, values.size() - 1);
    return {std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(train)),
            std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(train), values.end())};
}

}  // namespace fraug
