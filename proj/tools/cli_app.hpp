#pragma once

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraug/densify.hpp"
#include "fraug/fraug.hpp"

namespace fraug::cli {

enum ExitCode : int { kOk = 0, kIoFailure = 1, kUsage = 2, kNumerical = 3 };

inline int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::IoError:
        case ErrorCode::ParseError:
            return kIoFailure;
        case ErrorCode::InvalidArgument:
            return kUsage;
        default:
            return kNumerical;
    }
}

namespace detail {

inline std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> names = {"chs", "cvs", "fs", "linear"};
    return names;
}

struct InterpolateArgs {
    std::string input;
    std::string strategy = "cvs";
    std::size_t n_interpolation = kDefaultInterpolationPoints;
    std::optional<std::size_t> sequence_size;
    bool strict = false;
    std::uint64_t seed = 0;
    std::size_t trials = 15;
    std::size_t iterations = 15;
    std::vector<double> s_range = {-1.0, 1.0};
    std::string out;
    std::string manifest;
};

inline int cmd_interpolate(const InterpolateArgs& a, std::ostream& out) {
    const std::string raw = io::read_file(a.input);
    std::istringstream in(raw);
    const io::Dataset ds = io::parse_csv(in, a.input);

    StrategyConfig config;
    config.kind = *parse_strategy(a.strategy);
    config.n_interpolation = a.n_interpolation;
    config.sequence_size = a.sequence_size.value_or(config.kind == StrategyKind::Fs ? 0 : 10);
    config.strict = a.strict;
    config.seed = a.seed;
    config.trials = a.trials;
    config.iterations = a.iterations;
    config.s_low = a.s_range[0];
    config.s_high = a.s_range[1];

    const AugmentResult result = augment(ds.series, config);
    const double deviation = max_deviation_from_linear(ds.series, result.series);
    io::write_text_file(a.out, io::to_csv(result.series, ds));

    io::Manifest manifest;
    manifest.command = "interpolate";
    manifest.config = io::to_json(config);
    manifest.config["sequence_size"] = result.sequence_size;
    manifest.seed = a.seed;
    manifest.input_hash = io::fnv1a_hex(raw);
    const std::string manifest_path = a.manifest.empty() ? a.out + ".json" : a.manifest;
    manifest.outputs = {a.out, manifest_path};
    io::Json segments = io::Json::array();
    for (const auto& s : result.segments) {
        segments.push_back({{"start", s.start_index}, {"end", s.end_index}, {"scaling", s.scaling},
                            {"score", s.score}});
    }
    manifest.metrics = {{"input_points", ds.series.size()},
                        {"output_points", result.series.size()},
                        {"sequence_size", result.sequence_size},
                        {"max_deviation_from_linear", deviation},
                        {"segments", segments}};
    if (result.sequence_search) {
        io::Json history = io::Json::array();
        for (const auto& [size, total] : result.sequence_search->history) {
            history.push_back({{"sequence_size", size}, {"total_rmse", total}});
        }
        manifest.metrics["sequence_search"] = history;
    }
    io::write_text_file(manifest_path, io::dump(io::to_json(manifest)));

    out << "strategy " << a.strategy << ": " << ds.series.size() << " -> " << result.series.size()
        << " points, sequence size " << result.sequence_size << ", " << result.segments.size()
        << " segment(s)\n"
        << "max deviation from linear: " << fixed(deviation) << '\n'
        << "wrote " << a.out << " and " << manifest_path << '\n';
    return kOk;
}

struct DensifyArgs {
    std::string input;
    std::size_t factor = 6;
    std::string strategy = "all";
    std::string ground_truth;
    std::size_t sequence_size = 10;
    std::vector<double> chs_range = {0.0, 0.2};
    std::uint64_t seed = 0;
    std::string out;
    std::string report;
};

inline int cmd_densify(const DensifyArgs& a, std::ostream& out) {
    const io::Dataset input = io::read_csv(a.input);
    std::vector<std::string> kinds;
    if (a.strategy == "all") kinds = strategy_names();
    else kinds = {a.strategy};
    if (kinds.size() > 1 && !a.out.empty()) {
        fail(ErrorCode::InvalidArgument, "--out needs a single --strategy");
    }

    std::optional<io::Dataset> truth;
    if (!a.ground_truth.empty()) truth = io::read_csv(a.ground_truth);

    io::Json report = io::Json::object();
    report["factor"] = a.factor;
    report["n_interpolation"] = a.factor == 0 ? 0 : a.factor - 1;
    report["sequence_size"] = a.sequence_size;
    report["chs_range"] = a.chs_range;
    report["seed"] = a.seed;
    io::Json maes = io::Json::object();
    for (const auto& name : kinds) {
        StrategyConfig config;
        config.kind = *parse_strategy(name);
        config.sequence_size = a.sequence_size;
        config.seed = a.seed;
        if (config.kind == StrategyKind::Chs) {
            config.s_low = a.chs_range[0];
            config.s_high = a.chs_range[1];
        }
        const DensifyResult r = truth ? densify(input.series, truth->series, a.factor, config)
                                      : densify(input.series, a.factor, config);
        out << name << " MAE " << fixed(r.mae) << '\n';
        maes[name] = r.mae;
        if (!a.out.empty()) io::write_text_file(a.out, io::to_csv(r.densified, truth ? *truth : input));
    }
    report["mae"] = maes;
    if (!a.report.empty()) io::write_text_file(a.report, io::dump(report));
    return kOk;
}

struct ForecastArgs {
    std::string input;
    std::string strategy = "none";
    std::size_t n_interpolation = kDefaultInterpolationPoints;
    std::size_t sequence_size = 10;
    bool tune = false;
    std::string config;
    std::size_t trials = 50;
    std::size_t repeats = 5;
    bool lite = false;
    bool no_transform = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string config_out;
};

inline int cmd_forecast(const ForecastArgs& a, std::ostream& out) {
    const std::string raw = io::read_file(a.input);
    std::istringstream in(raw);
    const io::Dataset ds = io::parse_csv(in, a.input);

    ForecastOptions options;
    if (a.strategy != "none") {
        StrategyConfig sc;
        sc.kind = *parse_strategy(a.strategy);
        sc.n_interpolation = a.n_interpolation;
        sc.sequence_size = a.sequence_size;
        sc.seed = a.seed;
        options.augmentation = sc;
    }
    if (!a.config.empty()) {
        options.config = io::predictor_config_from_json(io::Json::parse(io::read_file(a.config), nullptr, false));
    } else {
        options.tune = a.lite ? TuneOptions::lite(a.seed) : TuneOptions{};
        if (!a.lite) {
            options.tune.trials = a.trials;
            options.tune.repeats = a.repeats;
            options.tune.seed = a.seed;
        }
    }
    options.select_transform = !a.no_transform;

    const ForecastReport r = run_forecast(ds.series, options);

    out << "series: " << r.input_length << " points";
    if (options.augmentation) out << " -> " << r.series_length << " after " << a.strategy;
    out << ", transform " << to_string(r.transform.method) << '\n'
        << "split: " << r.train_length << " train / " << r.test_length << " test\n"
        << "hyperparameters: units " << r.config.units << ", input_data_points "
        << r.config.input_data_points << ", learning_rate " << fixed(r.config.learning_rate, 6)
        << ", epochs " << r.config.epochs << ", seed " << r.config.seed << '\n'
        << "model  train_rmse  test_rmse  test_mae\n"
        << "lstm   " << fixed(r.lstm_train.rmse) << "  " << fixed(r.lstm_test.rmse) << "   "
        << fixed(r.lstm_test.mae) << '\n'
        << "ar     " << fixed(r.ar_train.rmse) << "  " << fixed(r.ar_test.rmse) << "   "
        << fixed(r.ar_test.mae) << '\n';

    if (!a.config_out.empty()) io::write_text_file(a.config_out, io::dump(io::to_json(r.config)));
    if (!a.out.empty()) {
        io::Manifest manifest;
        manifest.command = "forecast";
        manifest.config = {{"strategy", a.strategy}, {"predictor", io::to_json(r.config)}};
        if (options.augmentation) manifest.config["augmentation"] = io::to_json(*options.augmentation);
        manifest.seed = a.seed;
        manifest.input_hash = io::fnv1a_hex(raw);
        manifest.outputs = {a.out};
        if (!a.config_out.empty()) manifest.outputs.push_back(a.config_out);
        manifest.metrics = io::to_json(r);
        io::Json doc = io::to_json(manifest);
        doc["model"] = io::to_json(r.weights);
        io::write_text_file(a.out, io::dump(doc));
    }
    return kOk;
}

struct AnalyzeArgs {
    std::string input;
    bool hurst = false;
    bool adf = false;
    std::string json;
};

inline int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    const io::Dataset ds = io::read_csv(a.input);
    const auto ys = ds.series.ys();
    const bool both = !a.hurst && !a.adf;
    io::Json report = io::Json::object();
    report["points"] = ys.size();
    if (a.hurst || both) {
        const auto h = hurst_exponent(ys);
        out << "hurst " << fixed(h.h, 4) << '\n';
        report["hurst"] = io::to_json(h);
    }
    if (a.adf || both) {
        const auto r = adf_test(ys);
        out << "adf statistic " << fixed(r.statistic, 4) << " p-value " << fixed(r.p_value, 4)
            << " lags " << r.lags << (r.is_stationary ? " stationary" : " non-stationary") << '\n';
        report["adf"] = io::to_json(r);
    }
    if (!a.json.empty()) io::write_text_file(a.json, io::dump(report));
    return kOk;
}

struct PlotArgs {
    std::vector<std::string> inputs;
    std::vector<std::string> labels;
    std::string title;
    std::string out;
};

inline int cmd_plot(const PlotArgs& a, std::ostream& out) {
    if (!a.labels.empty() && a.labels.size() != a.inputs.size()) {
        fail(ErrorCode::InvalidArgument, "--labels needs one label per input");
    }
    std::vector<io::PlotSeries> plots;
    for (std::size_t i = 0; i < a.inputs.size(); ++i) {
        const io::Dataset ds = io::read_csv(a.inputs[i]);
        const std::string label =
            a.labels.empty() ? std::filesystem::path(a.inputs[i]).stem().string() : a.labels[i];
        plots.push_back({label, ds.series, i == 0});
    }
    io::write_text_file(a.out, io::render_svg(plots, a.title));
    out << "wrote " << a.out << " (" << plots.size() << " series)\n";
    return kOk;
}

struct GenerateArgs {
    std::string kind;
    std::size_t n = 168;
    std::uint64_t seed = 0;
    std::size_t period = 24;
    std::string out;
};

inline int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    const auto kind = *synthetic::parse_kind(a.kind);
    TimeSeries series;
    if (kind == synthetic::Kind::Diurnal) {
        if (a.n < 4) fail(ErrorCode::InvalidArgument, "n must be at least 4");
        synthetic::DiurnalOptions opts;
        opts.period = a.period;
        series = synthetic::diurnal(a.n, a.seed, opts);
    } else {
        series = synthetic::generate(kind, a.n, a.seed);
    }
    io::write_text_file(a.out, io::to_csv(series));
    out << "wrote " << a.out << " (" << series.size() << " rows)\n";
    return kOk;
}

}  // namespace detail

/**
 * @brief Entry point shared by the executable and the tests.
 *
 * Returns 0 on success, 1 on I/O and parse failures, 2 on usage errors and
 * 3 on numerical or domain errors. Errors go to `err` as
 * "error: Code: message".
 */
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractal interpolation augmentation and forecasting toolkit", "fraug"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "fraug 0.1.0");

    const auto strategies = CLI::IsMember(detail::strategy_names());

    detail::InterpolateArgs ia;
    auto* interpolate = app.add_subcommand("interpolate", "Augment a series by fractal interpolation");
    interpolate->add_option("input", ia.input, "Input CSV")->required();
    interpolate->add_option("--strategy", ia.strategy, "chs, cvs, fs or linear")->check(strategies)->capture_default_str();
    interpolate->add_option("--n-interpolation", ia.n_interpolation, "Points added per gap")->check(CLI::PositiveNumber)->capture_default_str();
    interpolate->add_option("--sequence-size", ia.sequence_size, "Segment length (fs searches it when omitted; others default to 10)");
    interpolate->add_flag("--strict", ia.strict, "Require equal-length segments");
    interpolate->add_option("--seed", ia.seed, "Random seed")->capture_default_str();
    interpolate->add_option("--trials", ia.trials, "CVS trials per segment")->check(CLI::PositiveNumber)->capture_default_str();
    interpolate->add_option("--iterations", ia.iterations, "CHS candidates per segment")->check(CLI::PositiveNumber)->capture_default_str();
    interpolate->add_option("--s-range", ia.s_range, "Scaling range for chs and cvs")->expected(2)->capture_default_str();
    interpolate->add_option("--out", ia.out, "Output CSV")->required();
    interpolate->add_option("--manifest", ia.manifest, "Manifest path (default: <out>.json)");

    detail::DensifyArgs da;
    auto* densify_cmd = app.add_subcommand("densify", "Score interpolation against a finer ground truth");
    densify_cmd->add_option("input", da.input, "Coarse CSV, or the fine CSV when --ground-truth is omitted")->required();
    densify_cmd->add_option("--factor", da.factor, "Sampling-rate ratio")->check(CLI::PositiveNumber)->capture_default_str();
    densify_cmd->add_option("--strategy", da.strategy, "chs, cvs, fs, linear or all")
        ->check(CLI::IsMember({"chs", "cvs", "fs", "linear", "all"}))->capture_default_str();
    densify_cmd->add_option("--ground-truth", da.ground_truth, "Fine CSV the input was downsampled from");
    densify_cmd->add_option("--sequence-size", da.sequence_size, "Segment length")->capture_default_str();
    densify_cmd->add_option("--chs-range", da.chs_range, "Scaling range for chs")->expected(2)->capture_default_str();
    densify_cmd->add_option("--seed", da.seed, "Random seed")->capture_default_str();
    densify_cmd->add_option("--out", da.out, "Densified CSV (single strategy only)");
    densify_cmd->add_option("--report", da.report, "JSON report");

    detail::ForecastArgs fa;
    auto* forecast = app.add_subcommand("forecast", "Train and evaluate the forecaster");
    forecast->add_option("input", fa.input, "Input CSV")->required();
    forecast->add_option("--strategy", fa.strategy, "none, chs, cvs, fs or linear")
        ->check(CLI::IsMember({"none", "chs", "cvs", "fs", "linear"}))->capture_default_str();
    forecast->add_option("--n-interpolation", fa.n_interpolation, "Points added per gap")->check(CLI::PositiveNumber)->capture_default_str();
    forecast->add_option("--sequence-size", fa.sequence_size, "Segment length")->capture_default_str();
    auto* tune_flag = forecast->add_flag("--tune", fa.tune, "Tune hyperparameters (the default)");
    auto* config_opt = forecast->add_option("--config", fa.config, "Predictor config JSON to use instead of tuning");
    tune_flag->excludes(config_opt);
    forecast->add_option("--trials", fa.trials, "Tuning trials")->check(CLI::PositiveNumber)->capture_default_str();
    forecast->add_option("--repeats", fa.repeats, "Fits per tuning trial")->check(CLI::PositiveNumber)->capture_default_str();
    forecast->add_flag("--lite", fa.lite, "10 trials, 1 fit each, units <= 16, window <= 24");
    forecast->add_flag("--no-transform", fa.no_transform, "Skip stationarity transform selection");
    forecast->add_option("--seed", fa.seed, "Random seed")->capture_default_str();
    forecast->add_option("--out", fa.out, "JSON report");
    forecast->add_option("--config-out", fa.config_out, "Write the predictor config used");

    detail::AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Hurst exponent and ADF test");
    analyze->add_option("input", aa.input, "Input CSV")->required();
    analyze->add_flag("--hurst", aa.hurst, "Hurst exponent only");
    analyze->add_flag("--adf", aa.adf, "ADF test only");
    analyze->add_option("--json", aa.json, "JSON report");

    detail::PlotArgs pa;
    auto* plot = app.add_subcommand("plot", "SVG line chart; the first input gets markers");
    plot->add_option("inputs", pa.inputs, "Input CSVs")->required();
    plot->add_option("--labels", pa.labels, "Legend labels")->delimiter(',');
    plot->add_option("--title", pa.title, "Chart title");
    plot->add_option("--out", pa.out, "Output SVG")->required();

    detail::GenerateArgs ga;
    auto* generate = app.add_subcommand("generate", "Write a synthetic series");
    generate->add_option("--kind", ga.kind, "diurnal, noise, randomwalk or gamma")
        ->required()->check(CLI::IsMember({"diurnal", "noise", "randomwalk", "gamma"}));
    generate->add_option("--n", ga.n, "Number of points (ignored for gamma)")->capture_default_str();
    generate->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
    generate->add_option("--period", ga.period, "Diurnal period in samples")->check(CLI::PositiveNumber)->capture_default_str();
    generate->add_option("--out", ga.out, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const log::Level threshold = log::level();
    auto previous = log::set_sink([&err, threshold](log::Level level, std::string_view message) {
        if (level >= threshold) err << "warning: " << message << '\n';
    });
    struct Restore {
        log::Sink sink;
        ~Restore() { log::set_sink(std::move(sink)); }
    } restore{std::move(previous)};

    try {
        if (interpolate->parsed()) return detail::cmd_interpolate(ia, out);
        if (densify_cmd->parsed()) return detail::cmd_densify(da, out);
        if (forecast->parsed()) return detail::cmd_forecast(fa, out);
        if (analyze->parsed()) return detail::cmd_analyze(aa, out);
        if (plot->parsed()) return detail::cmd_plot(pa, out);
        if (generate->parsed()) return detail::cmd_generate(ga, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

}  // namespace fraug::cli
