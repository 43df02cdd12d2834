#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fraug/error.hpp"
#include "fraug/pipeline/windows.hpp"
#include "fraug/rng.hpp"

namespace fraug {

/// Hyperparameters of the recurrent forecaster.
struct PredictorConfig {
    std::size_t units = 16;
    std::size_t input_data_points = 8;
    double learning_rate = 0.01;
    std::size_t epochs = 25;
    std::uint64_t seed = 0;

    friend bool operator==(const PredictorConfig&, const PredictorConfig&) = default;
};

/**
 * Weights of a single LSTM layer (one input feature) with a width-1 dense
 * head. Gate rows are stacked in the order input, forget, cell, output.
 */
struct LstmWeights {
    Eigen::VectorXd input;      ///< 4u
    Eigen::MatrixXd recurrent;  ///< 4u x u
    Eigen::VectorXd bias;       ///< 4u
    Eigen::VectorXd head;       ///< u
    double head_bias = 0.0;

    static LstmWeights zeros(std::size_t units) {
        const auto u = static_cast<Eigen::Index>(units);
        return {Eigen::VectorXd::Zero(4 * u), Eigen::MatrixXd::Zero(4 * u, u),
                Eigen::VectorXd::Zero(4 * u), Eigen::VectorXd::Zero(u), 0.0};
    }

    [[nodiscard]] std::size_t units() const noexcept { return static_cast<std::size_t>(head.size()); }

    [[nodiscard]] double squared_norm() const {
        return input.squaredNorm() + recurrent.squaredNorm() + bias.squaredNorm() +
               head.squaredNorm() + head_bias * head_bias;
    }

    void scale(double factor) {
        input *= factor;
        recurrent *= factor;
        bias *= factor;
        head *= factor;
        head_bias *= factor;
    }

    /// All parameters flattened: input, recurrent (row-major), bias, head, head_bias.
    [[nodiscard]] std::vector<double> flatten() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(input.size() + recurrent.size() + bias.size() +
                                              head.size() + 1));
        out.insert(out.end(), input.data(), input.data() + input.size());
        for (Eigen::Index r = 0; r < recurrent.rows(); ++r) {
            for (Eigen::Index c = 0; c < recurrent.cols(); ++c) out.push_back(recurrent(r, c));
        }
        out.insert(out.end(), bias.data(), bias.data() + bias.size());
        out.insert(out.end(), head.data(), head.data() + head.size());
        out.push_back(head_bias);
        return out;
    }

    static LstmWeights unflatten(std::size_t units, std::span<const double> flat) {
        LstmWeights w = zeros(units);
        const auto expected = static_cast<std::size_t>(w.input.size() + w.recurrent.size() +
                                                       w.bias.size() + w.head.size() + 1);
        if (flat.size() != expected) {
            fail(ErrorCode::LengthMismatch, "expected " + std::to_string(expected) +
                                                " weights for " + std::to_string(units) +
                                                " units, got " + std::to_string(flat.size()));
        }
        std::size_t k = 0;
        for (Eigen::Index i = 0; i < w.input.size(); ++i) w.input(i) = flat[k++];
        for (Eigen::Index r = 0; r < w.recurrent.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.recurrent.cols(); ++c) w.recurrent(r, c) = flat[k++];
        }
        for (Eigen::Index i = 0; i < w.bias.size(); ++i) w.bias(i) = flat[k++];
        for (Eigen::Index i = 0; i < w.head.size(); ++i) w.head(i) = flat[k++];
        w.head_bias = flat[k];
        return w;
    }
};

namespace detail {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Per-timestep activations kept for backpropagation through time.
struct LstmTape {
    std::vector<Eigen::VectorXd> gates;  // post-activation i, f, g, o
    std::vector<Eigen::VectorXd> cells;  // c_0 .. c_T
    std::vector<Eigen::VectorXd> hidden; // h_0 .. h_T
};

inline double lstm_forward(const LstmWeights& w, std::span<const double> window, LstmTape* tape) {
    const auto u = static_cast<Eigen::Index>(w.units());
    Eigen::VectorXd h = Eigen::VectorXd::Zero(u);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(u);
    Eigen::VectorXd z(4 * u);
    if (tape != nullptr) {
        tape->gates.clear();
        tape->cells.assign(1, c);
        tape->hidden.assign(1, h);
    }
    for (double x : window) {
        z.noalias() = w.input * x + w.bias;
        z.noalias() += w.recurrent * h;
        for (Eigen::Index k = 0; k < u; ++k) {
            z(k) = sigmoid(z(k));                   // input
            z(u + k) = sigmoid(z(u + k));           // forget
            z(2 * u + k) = std::tanh(z(2 * u + k)); // cell candidate
            z(3 * u + k) = sigmoid(z(3 * u + k));   // output
        }
        c = z.segment(u, u).cwiseProduct(c) + z.head(u).cwiseProduct(z.segment(2 * u, u));
        h = z.tail(u).cwiseProduct(c.array().tanh().matrix());
        if (tape != nullptr) {
            tape->gates.push_back(z);
            tape->cells.push_back(c);
            tape->hidden.push_back(h);
        }
    }
    return w.head.dot(h) + w.head_bias;
}

/// Accumulates d(loss)/d(weights) into grad given d(loss)/d(output).
inline void lstm_backward(const LstmWeights& w, std::span<const double> window,
                          const LstmTape& tape, double d_out, LstmWeights& grad) {
    const auto u = static_cast<Eigen::Index>(w.units());
    const std::size_t steps = window.size();
    grad.head += d_out * tape.hidden[steps];
    grad.head_bias += d_out;

    Eigen::VectorXd dh = d_out * w.head;
    Eigen::VectorXd dc = Eigen::VectorXd::Zero(u);
    Eigen::VectorXd dz(4 * u);
    for (std::size_t t = steps; t-- > 0;) {
        const Eigen::VectorXd& gate = tape.gates[t];
        const Eigen::VectorXd& c_prev = tape.cells[t];
        const Eigen::VectorXd& h_prev = tape.hidden[t];
        const Eigen::ArrayXd tanh_c = tape.cells[t + 1].array().tanh();
        const auto i = gate.head(u).array();
        const auto f = gate.segment(u, u).array();
        const auto g = gate.segment(2 * u, u).array();
        const auto o = gate.tail(u).array();

        dc.array() += dh.array() * o * (1.0 - tanh_c.square());
        dz.head(u).array() = dc.array() * g * i * (1.0 - i);
        dz.segment(u, u).array() = dc.array() * c_prev.array() * f * (1.0 - f);
        dz.segment(2 * u, u).array() = dc.array() * i * (1.0 - g.square());
        dz.tail(u).array() = dh.array() * tanh_c * o * (1.0 - o);

        grad.input += window[t] * dz;
        grad.bias += dz;
        grad.recurrent.noalias() += dz * h_prev.transpose();
        dh.noalias() = w.recurrent.transpose() * dz;
        dc.array() *= f;
    }
}

}  // namespace detail

/**
 * @brief Single-layer LSTM forecaster trained by Adam on squared error.
 *
 * One window per update (batch size 1), windows visited in a seeded random
 * order each epoch, gradient norm clipped to 1. Weights use Glorot-uniform
 * initialisation with the forget-gate bias set to 1.
 */
class LstmPredictor {
public:
    LstmPredictor(PredictorConfig config, LstmWeights weights)
        : config_(config), weights_(std::move(weights)) {}

    /// @throws Error EmptyInput, WindowWidthMismatch, InvalidArgument, NonFiniteLoss
    static LstmPredictor train(const SupervisedSet& data, const PredictorConfig& config) {
        if (data.empty()) fail(ErrorCode::EmptyInput, "no training windows");
        if (config.units == 0 || config.epochs == 0 || !(config.learning_rate > 0.0)) {
            fail(ErrorCode::InvalidArgument, "units, epochs and learning_rate must be positive");
        }
        if (data.width != config.input_data_points) {
            fail(ErrorCode::WindowWidthMismatch,
                 "training windows have width " + std::to_string(data.width) + ", config expects " +
                     std::to_string(config.input_data_points));
        }

        Rng rng(config.seed);
        LstmPredictor model(config, initial_weights(config.units, rng));
        const std::size_t u = config.units;
        LstmWeights grad = LstmWeights::zeros(u);
        LstmWeights m1 = LstmWeights::zeros(u);
        LstmWeights m2 = LstmWeights::zeros(u);
        detail::LstmTape tape;

        constexpr double kBeta1 = 0.9;
        constexpr double kBeta2 = 0.999;
        constexpr double kEpsilon = 1e-7;
        constexpr double kClipNorm = 1.0;
        double beta1_pow = 1.0;
        double beta2_pow = 1.0;

        std::vector<std::size_t> order(data.size());
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
            for (std::size_t k = order.size(); k > 1; --k) {
                std::swap(order[k - 1],
                          order[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k) - 1))]);
            }
            double epoch_loss = 0.0;
            for (std::size_t idx : order) {
                const auto& window = data.inputs[idx];
                const double out = detail::lstm_forward(model.weights_, window, &tape);
                const double err = out - data.targets[idx];
                epoch_loss += err * err;
                if (!std::isfinite(err)) break;

                grad.scale(0.0);
                detail::lstm_backward(model.weights_, window, tape, 2.0 * err, grad);
                const double norm = std::sqrt(grad.squared_norm());
                if (norm > kClipNorm) grad.scale(kClipNorm / norm);

                beta1_pow *= kBeta1;
                beta2_pow *= kBeta2;
                const double step = config.learning_rate * std::sqrt(1.0 - beta2_pow) / (1.0 - beta1_pow);
                adam_update(model.weights_.input, m1.input, m2.input, grad.input, step);
                adam_update(model.weights_.recurrent, m1.recurrent, m2.recurrent, grad.recurrent, step);
                adam_update(model.weights_.bias, m1.bias, m2.bias, grad.bias, step);
                adam_update(model.weights_.head, m1.head, m2.head, grad.head, step);
                m1.head_bias = kBeta1 * m1.head_bias + (1.0 - kBeta1) * grad.head_bias;
                m2.head_bias = kBeta2 * m2.head_bias + (1.0 - kBeta2) * grad.head_bias * grad.head_bias;
                model.weights_.head_bias -= step * m1.head_bias / (std::sqrt(m2.head_bias) + kEpsilon);
            }
            epoch_loss /= static_cast<double>(data.size());
            if (!std::isfinite(epoch_loss) || !std::isfinite(model.weights_.squared_norm())) {
                fail(ErrorCode::NonFiniteLoss,
                     "training diverged in epoch " + std::to_string(epoch + 1) +
                         " (learning rate " + std::to_string(config.learning_rate) + ")");
            }
            model.loss_history_.push_back(epoch_loss);
        }
        return model;
    }

    [[nodiscard]] double predict(std::span<const double> window) const {
        if (window.size() != config_.input_data_points) {
            fail(ErrorCode::WindowWidthMismatch,
                 "window of " + std::to_string(window.size()) + " values, model expects " +
                     std::to_string(config_.input_data_points));
        }
        return detail::lstm_forward(weights_, window, nullptr);
    }

    [[nodiscard]] std::size_t input_width() const noexcept { return config_.input_data_points; }
    [[nodiscard]] const PredictorConfig& config() const noexcept { return config_; }
    [[nodiscard]] const LstmWeights& weights() const noexcept { return weights_; }
    /// Mean squared error per epoch, accumulated while training.
    [[nodiscard]] const std::vector<double>& loss_history() const noexcept { return loss_history_; }

private:
    static LstmWeights initial_weights(std::size_t units, Rng& rng) {
        LstmWeights w = LstmWeights::zeros(units);
        const auto u = static_cast<double>(units);
        auto fill = [&rng](auto& m, double fan_in, double fan_out) {
            const double limit = std::sqrt(6.0 / (fan_in + fan_out));
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-limit, limit);
            }
        };
        fill(w.input, 1.0, 4.0 * u);
        fill(w.recurrent, u, 4.0 * u);
        fill(w.head, u, 1.0);
        w.bias.segment(static_cast<Eigen::Index>(units), static_cast<Eigen::Index>(units)).setOnes();
        return w;
    }

    template <class Mat>
    static void adam_update(Mat& param, Mat& m1, Mat& m2, const Mat& grad, double step) {
        constexpr double kBeta1 = 0.9;
        constexpr double kBeta2 = 0.999;
        constexpr double kEpsilon = 1e-7;
        m1 = kBeta1 * m1 + (1.0 - kBeta1) * grad;
        m2 = kBeta2 * m2 + (1.0 - kBeta2) * grad.cwiseProduct(grad);
        param.array() -= step * m1.array() / (m2.array().sqrt() + kEpsilon);
    }

    PredictorConfig config_;
    LstmWeights weights_;
    std::vector<double> loss_history_;
};

}  // namespace fraug
