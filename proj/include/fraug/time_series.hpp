#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fraug/error.hpp"

namespace fraug {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Ordered sequence of (x, y) samples. Validation is explicit, see
/// require_strictly_increasing().
class TimeSeries {
public:
    using const_iterator = std::vector<Point>::const_iterator;

    TimeSeries() = default;
    explicit TimeSeries(std::vector<Point> points) : points_(std::move(points)) {}
    TimeSeries(std::initializer_list<Point> points) : points_(points) {}

    /// Values at index abscissae x = x0, x0 + step, ...
    static TimeSeries from_values(std::span<const double> values, double x0 = 0.0,
                                  double step = 1.0) {
        std::vector<Point> points;
        points.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            points.push_back({x0 + step * static_cast<double>(i), values[i]});
        }
        return TimeSeries(std::move(points));
    }

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
    [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] Point& operator[](std::size_t i) { return points_[i]; }
    [[nodiscard]] const Point& front() const { return points_.front(); }
    [[nodiscard]] const Point& back() const { return points_.back(); }
    [[nodiscard]] const_iterator begin() const noexcept { return points_.begin(); }
    [[nodiscard]] const_iterator end() const noexcept { return points_.end(); }
    [[nodiscard]] const std::vector<Point>& points() const noexcept { return points_; }

    void push_back(Point p) { points_.push_back(p); }
    void reserve(std::size_t n) { points_.reserve(n); }

    [[nodiscard]] std::vector<double> xs() const {
        std::vector<double> out;
        out.reserve(points_.size());
        for (const auto& p : points_) out.push_back(p.x);
        return out;
    }

    [[nodiscard]] std::vector<double> ys() const {
        std::vector<double> out;
        out.reserve(points_.size());
        for (const auto& p : points_) out.push_back(p.y);
        return out;
    }

    /// Points [first, last] inclusive.
    [[nodiscard]] TimeSeries slice(std::size_t first, std::size_t last) const {
        if (first > last || last >= points_.size()) {
            fail(ErrorCode::IndexOutOfRange, "slice [" + std::to_string(first) + ", " +
                                                 std::to_string(last) + "] of series with " +
                                                 std::to_string(points_.size()) + " points");
        }
        return TimeSeries(std::vector<Point>(points_.begin() + static_cast<std::ptrdiff_t>(first),
                                             points_.begin() + static_cast<std::ptrdiff_t>(last) + 1));
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<Point> points_;
};

inline void require_strictly_increasing(const TimeSeries& series) {
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (!(series[i].x > series[i - 1].x)) {
            fail(ErrorCode::NonMonotonicAbscissa,
                 "x[" + std::to_string(i) + "] = " + std::to_string(series[i].x) +
                     " does not exceed x[" + std::to_string(i - 1) + "] = " +
                     std::to_string(series[i - 1].x));
        }
    }
}

}  // namespace fraug
