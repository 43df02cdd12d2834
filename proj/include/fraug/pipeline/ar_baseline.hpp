#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fraug/error.hpp"
#include "fraug/pipeline/windows.hpp"

namespace fraug {

/**
 * @brief Linear autoregressive forecaster fitted by ridge least squares.
 *
 * Inputs and targets are centered before solving, so the ridge term does not
 * shrink the intercept.
 */
class ArPredictor {
public:
    ArPredictor(std::vector<double> coefficients, double intercept)
        : coefficients_(std::move(coefficients)), intercept_(intercept) {}

    /// @throws Error EmptyInput, InvalidArgument
    static ArPredictor fit(const SupervisedSet& data, double ridge = 1e-6) {
        if (data.empty()) fail(ErrorCode::EmptyInput, "no training windows");
        if (!(ridge >= 0.0)) fail(ErrorCode::InvalidArgument, "ridge must be non-negative");
        const auto rows = static_cast<Eigen::Index>(data.size());
        const auto cols = static_cast<Eigen::Index>(data.width);
        Eigen::MatrixXd X(rows, cols);
        Eigen::VectorXd y(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const auto& window = data.inputs[static_cast<std::size_t>(r)];
            if (window.size() != data.width) {
                fail(ErrorCode::WindowWidthMismatch, "ragged training windows");
            }
            for (Eigen::Index c = 0; c < cols; ++c) X(r, c) = window[static_cast<std::size_t>(c)];
            y(r) = data.targets[static_cast<std::size_t>(r)];
        }
        const Eigen::RowVectorXd x_mean = X.colwise().mean();
        const double y_mean = y.mean();
        X.rowwise() -= x_mean;
        y.array() -= y_mean;

        Eigen::MatrixXd gram = X.transpose() * X;
        // A tiny floor keeps constant inputs solvable when ridge is 0.
        const double floor = std::max(ridge, 1e-12);
        gram.diagonal().array() += floor;
        const Eigen::LDLT<Eigen::MatrixXd> solver(gram);
        if (solver.info() != Eigen::Success) {
            fail(ErrorCode::SingularSystem, "normal equations could not be factorized");
        }
        const Eigen::VectorXd beta = solver.solve(X.transpose() * y);
        std::vector<double> coefficients(beta.data(), beta.data() + beta.size());
        return {std::move(coefficients), y_mean - x_mean.dot(beta)};
    }

    [[nodiscard]] double predict(std::span<const double> window) const {
        if (window.size() != coefficients_.size()) {
            fail(ErrorCode::WindowWidthMismatch,
                 "window of " + std::to_string(window.size()) + " values, model expects " +
                     std::to_string(coefficients_.size()));
        }
        double out = intercept_;
        for (std::size_t i = 0; i < window.size(); ++i) out += coefficients_[i] * window[i];
        return out;
    }

    [[nodiscard]] std::size_t input_width() const noexcept { return coefficients_.size(); }
    [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coefficients_; }
    [[nodiscard]] double intercept() const noexcept { return intercept_; }

private:
    std::vector<double> coefficients_;
    double intercept_;
};

}  // namespace fraug
