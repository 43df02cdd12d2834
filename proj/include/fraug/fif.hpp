#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/time_series.hpp"

namespace fraug {

/// Largest admissible |s_i|; strategies clamp to this bound.
inline constexpr double kMaxScaling = 1.0 - 1e-6;
/// Hutchinson operator applications allowed before giving up.
inline constexpr std::size_t kMaxOperatorIterations = 12;
inline constexpr std::size_t kDefaultInterpolationPoints = 17;
/// Relative tolerance under which two abscissae are the same point.
inline constexpr double kAbscissaTolerance = 1e-12;

/**
 * @brief One affine map of the iterated function system.
 *
 *     f(x, y) = (a x + c, d x + s y + e)
 */
struct AffineMap {
    double a = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
    double s = 0.0;

    [[nodiscard]] Point operator()(Point p) const noexcept {
        return {a * p.x + c, d * p.x + s * p.y + e};
    }
};

/**
 * @brief Iterated function system interpolating a set of nodes.
 *
 * maps[i - 1] is the map for interval i, sending the whole node range onto
 * [x_{i-1}, x_i]. The nodes are kept so that the model can evaluate itself
 * and reproduce node values exactly.
 */
struct FifModel {
    std::vector<AffineMap> maps;
    std::vector<Point> nodes;

    [[nodiscard]] std::size_t intervals() const noexcept { return maps.size(); }
    [[nodiscard]] const Point& first() const { return nodes.front(); }
    [[nodiscard]] const Point& last() const { return nodes.back(); }
};

/// Original nodes plus generated points, merged in x order.
struct InterpolatedSeries {
    TimeSeries points;
    std::vector<std::size_t> node_indices;
    std::size_t n_interpolation = 0;

    /// The original nodes, read back from their recorded positions.
    [[nodiscard]] TimeSeries nodes() const {
        TimeSeries out;
        out.reserve(node_indices.size());
        for (auto idx : node_indices) out.push_back(points[idx]);
        return out;
    }
};

namespace detail {

inline double abscissa_tolerance(double x0, double xn) {
    return kAbscissaTolerance * std::max({1.0, std::abs(x0), std::abs(xn), xn - x0});
}

/// Index i (1-based) of the interval [x_{i-1}, x_i] holding x; nodes sorted.
inline std::size_t interval_of(std::span<const Point> nodes, double x) {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x,
                               [](double value, const Point& p) { return value < p.x; });
    auto idx = static_cast<std::size_t>(it - nodes.begin());
    return std::clamp<std::size_t>(idx, 1, nodes.size() - 1);
}

inline double linear_at(std::span<const Point> nodes, double x) {
    const std::size_t i = interval_of(nodes, x);
    const Point& lo = nodes[i - 1];
    const Point& hi = nodes[i];
    if (x == hi.x) return hi.y;
    if (x == lo.x) return lo.y;
    return lo.y + (hi.y - lo.y) * (x - lo.x) / (hi.x - lo.x);
}

}  // namespace detail

/**
 * @brief Affine coefficients of the fractal interpolation function.
 *
 * For nodes (x_0, y_0) .. (x_N, y_N) and L = x_N - x_0:
 *
 *     a_i = (x_i - x_{i-1}) / L
 *     c_i = (x_N x_{i-1} - x_0 x_i) / L
 *     d_i = (y_i - y_{i-1}) / L - s_i (y_N - y_0) / L
 *     e_i = (x_N y_{i-1} - x_0 y_i) / L - s_i (x_N y_0 - x_0 y_N) / L
 *
 * so that f_i maps (x_0, y_0) to (x_{i-1}, y_{i-1}) and (x_N, y_N) to (x_i, y_i).
 *
 * @throws Error SegmentTooShort, NonMonotonicAbscissa, ScalingOutOfRange, LengthMismatch
 */
[[nodiscard]] inline FifModel compute_coefficients(const TimeSeries& segment,
                                                   std::span<const double> scaling) {
    if (segment.size() < 3) {
        fail(ErrorCode::SegmentTooShort, "fractal interpolation needs at least 3 points, got " +
                                             std::to_string(segment.size()));
    }
    require_strictly_increasing(segment);
    const std::size_t n = segment.size() - 1;
    if (scaling.size() != n) {
        fail(ErrorCode::LengthMismatch, "expected " + std::to_string(n) +
                                            " scaling factors, got " +
                                            std::to_string(scaling.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(scaling[i]) < 1.0)) {
            fail(ErrorCode::ScalingOutOfRange,
                 "|s_" + std::to_string(i + 1) + "| = " + std::to_string(std::abs(scaling[i])) +
                     " is not below 1");
        }
    }

    const double x0 = segment.front().x;
    const double xn = segment.back().x;
    const double y0 = segment.front().y;
    const double yn = segment.back().y;
    const double span = xn - x0;

    FifModel model;
    model.nodes = segment.points();
    model.maps.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const Point& prev = segment[i - 1];
        const Point& cur = segment[i];
        const double s = scaling[i - 1];
        AffineMap m;
        m.s = s;
        m.a = (cur.x - prev.x) / span;
        m.c = (xn * prev.x - x0 * cur.x) / span;
        m.d = (cur.y - prev.y) / span - s * (yn - y0) / span;
        m.e = (xn * prev.y - x0 * cur.y) / span - s * (xn * y0 - x0 * yn) / span;
        model.maps.push_back(m);
    }
    return model;
}

/// f_i(p) for the 1-based interval index i.
[[nodiscard]] inline Point apply_map(const FifModel& model, std::size_t interval, Point p) {
    if (interval < 1 || interval > model.intervals()) {
        fail(ErrorCode::IndexOutOfRange, "interval " + std::to_string(interval) +
                                             " outside [1, " +
                                             std::to_string(model.intervals()) + "]");
    }
    const double tol = detail::abscissa_tolerance(model.first().x, model.last().x);
    if (p.x < model.first().x - tol || p.x > model.last().x + tol) {
        fail(ErrorCode::AbscissaOutOfRange, "x = " + std::to_string(p.x) +
                                                " outside the interpolation domain");
    }
    return model.maps[interval - 1](p);
}

/// Piecewise-linear interpolant of the segment nodes at each of xs.
[[nodiscard]] inline std::vector<double> evaluate_linear(const TimeSeries& segment,
                                                         std::span<const double> xs) {
    if (segment.size() < 2) {
        fail(ErrorCode::SegmentTooShort, "linear interpolation needs at least 2 points");
    }
    const auto& nodes = segment.points();
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (x < nodes.front().x || x > nodes.back().x) {
            fail(ErrorCode::AbscissaOutOfRange,
                 "x = " + std::to_string(x) + " outside [" + std::to_string(nodes.front().x) +
                     ", " + std::to_string(nodes.back().x) + "]");
        }
        out.push_back(detail::linear_at(nodes, x));
    }
    return out;
}

/**
 * @brief Value of the interpolation function at x, by following addresses.
 *
 * Uses the self-affinity f(a_i u + c_i) = d_i u + s_i f(u) + e_i. Points
 * produced by a finite number of map applications land on a node after that
 * many steps; otherwise the recursion stops after max_depth steps, where the
 * remaining contribution is bounded by max|s|^max_depth.
 */
[[nodiscard]] inline double evaluate_fif(const FifModel& model, double x,
                                         std::size_t max_depth = 64) {
    const auto& nodes = model.nodes;
    const double x0 = nodes.front().x;
    const double xn = nodes.back().x;
    const double node_tol = 1e-9 * (xn - x0);
    double scale = 1.0;
    double offset = 0.0;
    for (std::size_t depth = 0;; ++depth) {
        x = std::clamp(x, x0, xn);
        const std::size_t i = detail::interval_of(nodes, x);
        if (std::abs(x - nodes[i - 1].x) <= node_tol) return offset + scale * nodes[i - 1].y;
        if (std::abs(x - nodes[i].x) <= node_tol) return offset + scale * nodes[i].y;
        if (depth == max_depth) return offset + scale * detail::linear_at(nodes, x);
        const AffineMap& m = model.maps[i - 1];
        const double u = (x - m.c) / m.a;
        offset += scale * (m.d * u + m.e);
        scale *= m.s;
        x = u;
    }
}

/**
 * @brief Fractal interpolation of a segment.
 *
 * Iterates the Hutchinson operator K -> union_i f_i(K) starting from the node
 * set. Every node is a fixed point of the operator's join-up structure, so
 * each application keeps the nodes and fills every gap with the images of the
 * previous set. Iteration stops once each gap holds at least n_interpolation
 * distinct interior points; each gap is then thinned to exactly
 * n_interpolation points, taking the points nearest to the uniform grid of the
 * gap. Node values are copied verbatim from the input.
 *
 * @throws Error propagated from compute_coefficients(); InvalidArgument when
 *         n_interpolation is 0; IterationLimitExceeded after
 *         kMaxOperatorIterations applications.
 */
[[nodiscard]] inline InterpolatedSeries generate_fif(const TimeSeries& segment,
                                                     std::span<const double> scaling,
                                                     std::size_t n_interpolation =
                                                         kDefaultInterpolationPoints) {
    const FifModel model = compute_coefficients(segment, scaling);
    if (n_interpolation == 0) {
        fail(ErrorCode::InvalidArgument, "n_interpolation must be at least 1");
    }
    const auto& nodes = model.nodes;
    const std::size_t n = model.intervals();
    const double tol = detail::abscissa_tolerance(nodes.front().x, nodes.back().x);

    // Sorted attractor approximation; starts as the node set.
    std::vector<Point> current = nodes;
    std::size_t per_gap = 0;
    std::size_t iterations = 0;
    std::vector<std::size_t> gap_count(n, 0);
    while (per_gap < n_interpolation) {
        if (++iterations > kMaxOperatorIterations) {
            fail(ErrorCode::IterationLimitExceeded,
                 "could not reach " + std::to_string(n_interpolation) +
                     " interior points per gap within " +
                     std::to_string(kMaxOperatorIterations) + " operator iterations");
        }
        std::vector<Point> next;
        next.reserve(n * (current.size() - 1) + 1);
        next.push_back(nodes[0]);
        for (std::size_t i = 1; i <= n; ++i) {
            const AffineMap& m = model.maps[i - 1];
            const double right = nodes[i].x;
            std::size_t count = 0;
            // Endpoints of the previous set map onto nodes i-1 and i.
            for (std::size_t j = 1; j + 1 < current.size(); ++j) {
                const Point image = m(current[j]);
                if (image.x <= next.back().x + tol || image.x >= right - tol) continue;
                next.push_back(image);
                ++count;
            }
            next.push_back(nodes[i]);
            gap_count[i - 1] = count;
        }
        current = std::move(next);
        per_gap = *std::min_element(gap_count.begin(), gap_count.end());
    }

    InterpolatedSeries out;
    out.n_interpolation = n_interpolation;
    out.node_indices.reserve(n + 1);
    std::vector<Point> merged;
    merged.reserve(n * (n_interpolation + 1) + 1);

    std::size_t pos = 0;  // index of node i-1 within current
    for (std::size_t i = 1; i <= n; ++i) {
        out.node_indices.push_back(merged.size());
        merged.push_back(nodes[i - 1]);
        const std::size_t first = pos + 1;
        const std::size_t m = gap_count[i - 1];
        const double left = nodes[i - 1].x;
        const double width = nodes[i].x - left;

        auto cand_x = [&](std::size_t k) { return current[first + k].x; };
        std::size_t lo = 0;
        for (std::size_t j = 1; j <= n_interpolation; ++j) {
            const double target =
                left + width * static_cast<double>(j) / static_cast<double>(n_interpolation + 1);
            // Leave room for the remaining picks.
            const std::size_t hi = m - (n_interpolation - j) - 1;
            std::size_t k = lo;
            while (k < hi && cand_x(k + 1) <= target) ++k;
            if (k < hi && std::abs(cand_x(k + 1) - target) < std::abs(cand_x(k) - target)) ++k;
            merged.push_back(current[first + k]);
            lo = k + 1;
        }
        pos = first + m;
    }
    out.node_indices.push_back(merged.size());
    merged.push_back(nodes[n]);
    out.points = TimeSeries(std::move(merged));
    return out;
}

/**
 * @brief Self-affinity defect of a generated series.
 *
 * For each generated point p in gap i, maps p back through f_i to the
 * abscissa u = (p.x - c_i) / a_i, looks up the function value at u (from the
 * series itself when u is one of its points, otherwise from the model), and
 * measures |p.y - (d_i u + s_i y(u) + e_i)|. Returns the maximum.
 *
 * @throws Error EmptyGeneratedSet when the series has no generated points,
 *         InvalidArgument when its nodes do not match the model.
 */
[[nodiscard]] inline double fixed_point_residual(const FifModel& model,
                                                 const InterpolatedSeries& series) {
    const auto& pts = series.points.points();
    if (series.node_indices.size() >= pts.size()) {
        fail(ErrorCode::EmptyGeneratedSet, "series holds no generated points");
    }
    if (series.node_indices.size() != model.nodes.size()) {
        fail(ErrorCode::InvalidArgument, "series and model have different node counts");
    }
    const double x0 = model.first().x;
    const double xn = model.last().x;
    const double tol = 1e-9 * (xn - x0);
    for (std::size_t k = 0; k < model.nodes.size(); ++k) {
        if (std::abs(pts[series.node_indices[k]].x - model.nodes[k].x) > tol) {
            fail(ErrorCode::InvalidArgument, "series node " + std::to_string(k) +
                                                 " does not match the model");
        }
    }

    auto value_at = [&](double u) {
        auto it = std::lower_bound(pts.begin(), pts.end(), u,
                                   [](const Point& p, double v) { return p.x < v; });
        if (it != pts.end() && std::abs(it->x - u) <= tol) return it->y;
        if (it != pts.begin() && std::abs(std::prev(it)->x - u) <= tol) return std::prev(it)->y;
        return evaluate_fif(model, u);
    };

    double worst = 0.0;
    std::size_t next_node = 0;
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
        if (next_node < series.node_indices.size() && series.node_indices[next_node] == idx) {
            ++next_node;
            continue;
        }
        const Point& p = pts[idx];
        const std::size_t i = detail::interval_of(model.nodes, p.x);
        const AffineMap& m = model.maps[i - 1];
        const double u = std::clamp((p.x - m.c) / m.a, x0, xn);
        const double predicted = m.d * u + m.s * value_at(u) + m.e;
        worst = std::max(worst, std::abs(p.y - predicted));
    }
    return worst;
}

}  // namespace fraug
