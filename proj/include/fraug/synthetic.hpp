#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "fraug/error.hpp"
#include "fraug/rng.hpp"
#include "fraug/time_series.hpp"

namespace fraug::synthetic {

enum class Kind { Diurnal, Noise, RandomWalk, Gamma };

inline std::optional<Kind> parse_kind(std::string_view name) {
    if (name == "diurnal") return Kind::Diurnal;
    if (name == "noise") return Kind::Noise;
    if (name == "randomwalk") return Kind::RandomWalk;
    if (name == "gamma") return Kind::Gamma;
    return std::nullopt;
}

/// Temperature-like stand-in: offset + amplitude sin(2 pi t / period) + trend t + noise.
struct DiurnalOptions {
    std::size_t period = 24;
    double offset = 15.0;
    double amplitude = 5.0;
    double trend = 0.01;
    double noise = 0.3;
};

/// x = 0, 1, ..., n - 1.
[[nodiscard]] inline TimeSeries diurnal(std::size_t n, std::uint64_t seed,
                                        const DiurnalOptions& options = {}) {
    if (options.period == 0) fail(ErrorCode::InvalidArgument, "period must be positive");
    Rng rng(seed);
    TimeSeries out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = static_cast<double>(i);
        const double phase = 2.0 * std::numbers::pi * t / static_cast<double>(options.period);
        out.push_back({t, options.offset + options.amplitude * std::sin(phase) + options.trend * t +
                              rng.normal(0.0, options.noise)});
    }
    return out;
}

/// Standard Gaussian white noise.
[[nodiscard]] inline TimeSeries noise(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    TimeSeries out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<double>(i), rng.normal()});
    return out;
}

/// Cumulative sum of standard Gaussian steps.
[[nodiscard]] inline TimeSeries random_walk(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    TimeSeries out;
    out.reserve(n);
    double level = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        level += rng.normal();
        out.push_back({static_cast<double>(i), level});
    }
    return out;
}

/// The 11-point trial set used to illustrate FS.
[[nodiscard]] inline TimeSeries gamma() {
    return {{1, 10}, {2, 14}, {3, 19}, {4, 26}, {5, 35}, {6, 46},
            {7, 35}, {8, 26}, {9, 19}, {10, 14}, {11, 10}};
}

/// Every factor-th point starting at 0.
[[nodiscard]] inline TimeSeries downsample(const TimeSeries& series, std::size_t factor) {
    if (factor == 0) fail(ErrorCode::InvalidArgument, "factor must be positive");
    TimeSeries out;
    for (std::size_t i = 0; i < series.size(); i += factor) out.push_back(series[i]);
    return out;
}

/// @throws Error InvalidArgument when n < 4 for the generated kinds.
[[nodiscard]] inline TimeSeries generate(Kind kind, std::size_t n, std::uint64_t seed) {
    if (kind == Kind::Gamma) return gamma();
    if (n < 4) fail(ErrorCode::InvalidArgument, "n must be at least 4, got " + std::to_string(n));
    switch (kind) {
        case Kind::Diurnal: return diurnal(n, seed);
        case Kind::Noise: return noise(n, seed);
        case Kind::RandomWalk: return random_walk(n, seed);
        case Kind::Gamma: break;
    }
    return gamma();
}

}  // namespace fraug::synthetic
