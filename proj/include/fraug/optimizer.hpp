#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/rng.hpp"

namespace fraug {

enum class Direction { Minimize, Maximize };

enum class ParamKind { Float, Int };

/// Search range for one parameter; integer ranges are inclusive.
struct ParamSpace {
    ParamKind kind = ParamKind::Float;
    double low = 0.0;
    double high = 1.0;

    static ParamSpace uniform(double low, double high) { return {ParamKind::Float, low, high}; }
    static ParamSpace integer(std::int64_t low, std::int64_t high) {
        return {ParamKind::Int, static_cast<double>(low), static_cast<double>(high)};
    }

    friend bool operator==(const ParamSpace&, const ParamSpace&) = default;
};

inline void validate(const ParamSpace& space) {
    if (!(space.low < space.high) || !std::isfinite(space.low) || !std::isfinite(space.high)) {
        fail(ErrorCode::InvalidRange, "range [" + std::to_string(space.low) + ", " +
                                          std::to_string(space.high) + "] is empty");
    }
    if (space.kind == ParamKind::Int &&
        (space.low != std::floor(space.low) || space.high != std::floor(space.high))) {
        fail(ErrorCode::InvalidRange, "integer range bounds must be integers");
    }
}

struct TpeSettings {
    std::size_t n_startup = 5;
    double gamma = 0.25;
    std::size_t n_candidates = 24;
};

namespace detail {

/// Mixture of Gaussians truncated to [low, high].
class ParzenEstimator {
public:
    ParzenEstimator(std::span<const double> values, double low, double high)
        : low_(low), high_(high) {
        const double range = high - low;
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const double left = i == 0 ? sorted[i] - low : sorted[i] - sorted[i - 1];
            const double right =
                i + 1 == sorted.size() ? high - sorted[i] : sorted[i + 1] - sorted[i];
            const double sigma = std::clamp(std::max(left, right), 0.01 * range, range);
            mus_.push_back(sorted[i]);
            sigmas_.push_back(sigma);
        }
        // Wide prior component keeps both densities positive everywhere.
        mus_.push_back(0.5 * (low + high));
        sigmas_.push_back(range);
    }

    [[nodiscard]] double sample(Rng& rng) const {
        const auto k = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(mus_.size()) - 1));
        for (int attempt = 0; attempt < 64; ++attempt) {
            const double x = rng.normal(mus_[k], sigmas_[k]);
            if (x >= low_ && x <= high_) return x;
        }
        return std::clamp(mus_[k], low_, high_);
    }

    [[nodiscard]] double log_pdf(double x) const {
        double total = 0.0;
        for (std::size_t k = 0; k < mus_.size(); ++k) {
            const double z = (x - mus_[k]) / sigmas_[k];
            const double mass = normal_cdf((high_ - mus_[k]) / sigmas_[k]) -
                                normal_cdf((low_ - mus_[k]) / sigmas_[k]);
            total += std::exp(-0.5 * z * z) / (sigmas_[k] * std::sqrt(2.0 * std::numbers::pi) *
                                               std::max(mass, 1e-300));
        }
        return std::log(total / static_cast<double>(mus_.size()));
    }

private:
    static double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

    double low_;
    double high_;
    std::vector<double> mus_;
    std::vector<double> sigmas_;
};

}  // namespace detail

/**
 * @brief One Tree-structured Parzen Estimator proposal.
 *
 * history holds (value, objective) pairs where lower objectives are better.
 * The observations are ranked and the best ceil(gamma * n) form the "good"
 * group; a Parzen density l(x) is fitted to those values and g(x) to the rest.
 * n_candidates draws from l(x) are scored by l(x) / g(x) and the best one is
 * returned (rounded to an integer for integer spaces).
 *
 * @throws Error InsufficientHistory with fewer than two observations.
 */
[[nodiscard]] inline double tpe_sample(std::span<const std::pair<double, double>> history,
                                       const ParamSpace& space, Rng& rng,
                                       double gamma = 0.25, std::size_t n_candidates = 24) {
    validate(space);
    if (history.size() < 2) {
        fail(ErrorCode::InsufficientHistory,
             "TPE needs at least 2 observations, got " + std::to_string(history.size()));
    }
    std::vector<std::size_t> order(history.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return history[a].second < history[b].second;
    });
    const std::size_t n = history.size();
    const auto n_good = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(n))), 1, n - 1);

    std::vector<double> good;
    std::vector<double> rest;
    for (std::size_t r = 0; r < n; ++r) {
        (r < n_good ? good : rest).push_back(history[order[r]].first);
    }

    const bool is_int = space.kind == ParamKind::Int;
    const double low = is_int ? space.low - 0.5 : space.low;
    const double high = is_int ? space.high + 0.5 : space.high;
    const detail::ParzenEstimator l(good, low, high);
    const detail::ParzenEstimator g(rest, low, high);

    double best = l.sample(rng);
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < std::max<std::size_t>(n_candidates, 1); ++c) {
        const double x = c == 0 ? best : l.sample(rng);
        const double score = l.log_pdf(x) - g.log_pdf(x);
        if (score > best_score) {
            best_score = score;
            best = x;
        }
    }
    if (is_int) best = std::clamp(std::round(best), space.low, space.high);
    return best;
}

class Study;

/// A single evaluation of the objective.
class Trial {
public:
    Trial(std::size_t index, Study* study) : index_(index), study_(study) {}

    double suggest_float(const std::string& name, double low, double high);
    std::int64_t suggest_int(const std::string& name, std::int64_t low, std::int64_t high);

    [[nodiscard]] std::size_t index() const noexcept { return index_; }
    [[nodiscard]] double objective() const noexcept { return objective_; }
    [[nodiscard]] bool complete() const noexcept { return complete_; }
    [[nodiscard]] const std::map<std::string, double>& params() const noexcept { return params_; }
    [[nodiscard]] const std::map<std::string, ParamSpace>& spaces() const noexcept {
        return spaces_;
    }
    [[nodiscard]] double param(const std::string& name) const {
        auto it = params_.find(name);
        if (it == params_.end()) fail(ErrorCode::InvalidArgument, "no parameter '" + name + "'");
        return it->second;
    }

private:
    friend class Study;

    std::size_t index_;
    Study* study_;
    std::map<std::string, double> params_;
    std::map<std::string, ParamSpace> spaces_;
    double objective_ = std::numeric_limits<double>::quiet_NaN();
    bool complete_ = false;
};

using Objective = std::function<double(Trial&)>;

/**
 * @brief Sequential optimization study.
 *
 * The first n_startup trials sample every parameter uniformly; later trials
 * use tpe_sample() on that parameter's completed history (univariate TPE).
 * All randomness comes from one seeded stream, so a study is a pure function
 * of (seed, settings, objective).
 */
class Study {
public:
    explicit Study(Direction direction = Direction::Minimize, std::uint64_t seed = 0,
                   TpeSettings settings = {})
        : direction_(direction), seed_(seed), settings_(settings), rng_(seed) {}

    Study(const Study&) = delete;
    Study& operator=(const Study&) = delete;
    Study(Study&&) = delete;
    Study& operator=(Study&&) = delete;

    /**
     * Records and returns a value for `name` in `trial`.
     * @throws Error DuplicateParameterName, InvalidRange
     */
    double suggest(Trial& trial, const std::string& name, const ParamSpace& space) {
        validate(space);
        if (trial.params_.contains(name)) {
            fail(ErrorCode::DuplicateParameterName,
                 "parameter '" + name + "' already suggested in trial " +
                     std::to_string(trial.index()));
        }
        std::vector<std::pair<double, double>> history;
        for (const auto& t : trials_) {
            if (!t.complete_) continue;
            auto it = t.params_.find(name);
            if (it == t.params_.end() || t.spaces_.at(name) != space) continue;
            const double score = direction_ == Direction::Minimize ? t.objective_ : -t.objective_;
            history.emplace_back(it->second, score);
        }
        double value = 0.0;
        if (completed() < settings_.n_startup || history.size() < 2) {
            value = space.kind == ParamKind::Int
                        ? static_cast<double>(rng_.uniform_int(static_cast<std::int64_t>(space.low),
                                                               static_cast<std::int64_t>(space.high)))
                        : rng_.uniform(space.low, space.high);
        } else {
            value = tpe_sample(history, space, rng_, settings_.gamma, settings_.n_candidates);
        }
        trial.params_[name] = value;
        trial.spaces_[name] = space;
        return value;
    }

    /**
     * Runs n_trials evaluations in order and returns the best trial.
     * @throws Error ObjectiveFailure naming the failing trial.
     */
    const Trial& optimize(const Objective& objective, std::size_t n_trials) {
        if (n_trials == 0) fail(ErrorCode::InvalidArgument, "n_trials must be at least 1");
        for (std::size_t k = 0; k < n_trials; ++k) {
            Trial trial(trials_.size(), this);
            double value = 0.0;
            try {
                value = objective(trial);
            } catch (const std::exception& ex) {
                fail(ErrorCode::ObjectiveFailure,
                     "trial " + std::to_string(trial.index()) + ": " + ex.what());
            }
            if (!std::isfinite(value)) {
                fail(ErrorCode::ObjectiveFailure,
                     "trial " + std::to_string(trial.index()) + " returned a non-finite objective");
            }
            trial.objective_ = value;
            trial.complete_ = true;
            trials_.push_back(std::move(trial));
        }
        return best_trial();
    }

    [[nodiscard]] const Trial& best_trial() const {
        const Trial* best = nullptr;
        for (const auto& t : trials_) {
            if (!t.complete_) continue;
            if (best == nullptr || better(t.objective_, best->objective_)) best = &t;
        }
        if (best == nullptr) fail(ErrorCode::InvalidArgument, "study has no completed trials");
        return *best;
    }

    [[nodiscard]] const std::vector<Trial>& trials() const noexcept { return trials_; }
    [[nodiscard]] Direction direction() const noexcept { return direction_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] const TpeSettings& settings() const noexcept { return settings_; }

private:
    [[nodiscard]] std::size_t completed() const {
        return static_cast<std::size_t>(
            std::count_if(trials_.begin(), trials_.end(), [](const Trial& t) { return t.complete_; }));
    }

    [[nodiscard]] bool better(double a, double b) const {
        return direction_ == Direction::Minimize ? a < b : a > b;
    }

    Direction direction_;
    std::uint64_t seed_;
    TpeSettings settings_;
    Rng rng_;
    std::vector<Trial> trials_;
};

inline double Trial::suggest_float(const std::string& name, double low, double high) {
    return study_->suggest(*this, name, ParamSpace::uniform(low, high));
}

inline std::int64_t Trial::suggest_int(const std::string& name, std::int64_t low,
                                       std::int64_t high) {
    return static_cast<std::int64_t>(study_->suggest(*this, name, ParamSpace::integer(low, high)));
}

/// Plain copy of a completed trial for reports and serialization.
struct TrialRecord {
    std::size_t index = 0;
    std::map<std::string, double> params;
    double objective = 0.0;
};

[[nodiscard]] inline std::vector<TrialRecord> history(const Study& study) {
    std::vector<TrialRecord> out;
    for (const auto& t : study.trials()) {
        if (t.complete()) out.push_back({t.index(), t.params(), t.objective()});
    }
    return out;
}

/// Runs n_trials more evaluations on study and returns a copy of the best trial.
[[nodiscard]] inline Trial run_study(Study& study, const Objective& objective,
                                     std::size_t n_trials) {
    return study.optimize(objective, n_trials);
}

}  // namespace fraug
