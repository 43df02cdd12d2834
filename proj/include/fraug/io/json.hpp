#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraug/adf.hpp"
#include "fraug/error.hpp"
#include "fraug/hurst.hpp"
#include "fraug/metrics.hpp"
#include "fraug/optimizer.hpp"
#include "fraug/pipeline/forecast.hpp"
#include "fraug/pipeline/lstm.hpp"
#include "fraug/strategies.hpp"

namespace fraug::io {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, as 16 lowercase hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// @throws Error IoError
inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Two-space indent and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json to_json(const Metrics& m) { return {{"rmse", m.rmse}, {"mse", m.mse}, {"mae", m.mae}}; }

inline Json to_json(const AdfResult& r) {
    return {{"statistic", r.statistic}, {"p_value", r.p_value}, {"lags", r.lags},
            {"stationary", r.is_stationary}};
}

inline Json to_json(const HurstEstimate& h) {
    return {{"hurst", h.h}, {"window_sizes", h.window_sizes}, {"rs_values", h.rs_values},
            {"r2", h.regression_r2}};
}

inline Json to_json(const StrategyConfig& c) {
    return {{"strategy", std::string(to_string(c.kind))},
            {"n_interpolation", c.n_interpolation},
            {"sequence_size", c.sequence_size},
            {"strict", c.strict},
            {"s_low", c.s_low},
            {"s_high", c.s_high},
            {"iterations", c.iterations},
            {"trials", c.trials},
            {"sequence_trials", c.sequence_trials},
            {"seed", c.seed}};
}

/// Missing keys keep their defaults. @throws Error ParseError
inline StrategyConfig strategy_config_from_json(const Json& j) {
    StrategyConfig c;
    try {
        if (j.contains("strategy")) {
            const auto kind = parse_strategy(j.at("strategy").get<std::string>());
            if (!kind) fail(ErrorCode::ParseError, "unknown strategy '" + j.at("strategy").get<std::string>() + "'");
            c.kind = *kind;
        }
        c.n_interpolation = j.value("n_interpolation", c.n_interpolation);
        c.sequence_size = j.value("sequence_size", c.sequence_size);
        c.strict = j.value("strict", c.strict);
        c.s_low = j.value("s_low", c.s_low);
        c.s_high = j.value("s_high", c.s_high);
        c.iterations = j.value("iterations", c.iterations);
        c.trials = j.value("trials", c.trials);
        c.sequence_trials = j.value("sequence_trials", c.sequence_trials);
        c.seed = j.value("seed", c.seed);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("strategy config: ") + ex.what());
    }
    return c;
}

inline Json to_json(const PredictorConfig& c) {
    return {{"units", c.units},
            {"input_data_points", c.input_data_points},
            {"learning_rate", c.learning_rate},
            {"epochs", c.epochs},
            {"seed", c.seed}};
}

/// @throws Error ParseError
inline PredictorConfig predictor_config_from_json(const Json& j) {
    PredictorConfig c;
    try {
        c.units = j.at("units").get<std::size_t>();
        c.input_data_points = j.at("input_data_points").get<std::size_t>();
        c.learning_rate = j.at("learning_rate").get<double>();
        c.epochs = j.at("epochs").get<std::size_t>();
        c.seed = j.value("seed", c.seed);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("predictor config: ") + ex.what());
    }
    return c;
}

inline Json to_json(const std::vector<TrialRecord>& trials) {
    Json out = Json::array();
    for (const auto& t : trials) {
        Json params = Json::object();
        for (const auto& [name, value] : t.params) params[name] = value;
        out.push_back({{"index", t.index}, {"params", params}, {"objective", t.objective}});
    }
    return out;
}

inline Json to_json(const Study& study) {
    return {{"direction", study.direction() == Direction::Minimize ? "minimize" : "maximize"},
            {"seed", study.seed()},
            {"trials", to_json(history(study))}};
}

inline Json to_json(const LstmWeights& w) {
    return {{"units", w.units()}, {"weights", w.flatten()}};
}

inline LstmWeights lstm_weights_from_json(const Json& j) {
    try {
        const auto flat = j.at("weights").get<std::vector<double>>();
        return LstmWeights::unflatten(j.at("units").get<std::size_t>(), flat);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("weights: ") + ex.what());
    }
}

inline Json to_json(const TransformRecord& t) {
    Json j = {{"method", std::string(to_string(t.method))}};
    if (t.method == TransformMethod::LinearDetrend) {
        j["slope"] = t.slope;
        j["intercept"] = t.intercept;
    }
    j["adf_before"] = t.adf_before ? to_json(*t.adf_before) : Json(nullptr);
    j["adf_after"] = t.adf_after ? to_json(*t.adf_after) : Json(nullptr);
    return j;
}

inline Json to_json(const NormParams& p) {
    return {{"data_min", p.data_min}, {"data_max", p.data_max}, {"a", p.a}, {"b", p.b},
            {"degenerate", p.degenerate}};
}

/// Everything but the weights and per-window predictions.
inline Json to_json(const ForecastReport& r) {
    Json j = {{"input_length", r.input_length},
              {"series_length", r.series_length},
              {"sequence_size", r.sequence_size ? Json(*r.sequence_size) : Json(nullptr)},
              {"transform", to_json(r.transform)},
              {"normalization", to_json(r.normalization)},
              {"train_length", r.train_length},
              {"test_length", r.test_length},
              {"config", to_json(r.config)},
              {"lstm", {{"train", to_json(r.lstm_train)}, {"test", to_json(r.lstm_test)}}},
              {"ar_baseline",
               {{"train", to_json(r.ar_train)},
                {"test", to_json(r.ar_test)},
                {"coefficients", r.ar_coefficients},
                {"intercept", r.ar_intercept}}},
              {"loss_history", r.loss_history}};
    if (r.tuning) {
        j["tuning"] = {{"objective", r.tuning->objective},
                       {"window_ceiling", r.tuning->bounds.window_high},
                       {"units_ceiling", r.tuning->bounds.units_high},
                       {"trials", to_json(r.tuning->trials)}};
    }
    return j;
}

struct Manifest {
    std::string command;
    Json config = Json::object();
    std::uint64_t seed = 0;
    std::string input_hash;
    std::vector<std::string> outputs;
    Json metrics = Json::object();
};

inline Json to_json(const Manifest& m) {
    return {{"command", m.command}, {"config", m.config},     {"seed", m.seed},
            {"input_hash", m.input_hash}, {"outputs", m.outputs}, {"metrics", m.metrics}};
}

}  // namespace fraug::io
