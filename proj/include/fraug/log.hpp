#pragma once

#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>

namespace fraug::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Quiet = 3 };

using Sink = std::function<void(Level, std::string_view)>;

namespace detail {

inline Level level_from_env() {
    const char* env = std::getenv("FRAUG_LOG");
    if (env == nullptr) return Level::Warn;
    const std::string_view v(env);
    if (v == "debug") return Level::Debug;
    if (v == "info") return Level::Info;
    if (v == "quiet" || v == "off") return Level::Quiet;
    return Level::Warn;
}

struct State {
    std::mutex mutex;
    Level threshold = level_from_env();
    Sink sink;
};

inline State& state() {
    static State s;
    return s;
}

}  // namespace detail

inline void set_level(Level level) {
    auto& s = detail::state();
    std::scoped_lock lock(s.mutex);
    s.threshold = level;
}

inline Level level() {
    auto& s = detail::state();
    std::scoped_lock lock(s.mutex);
    return s.threshold;
}

/// Replaces the stderr sink; returns the previous one (empty means stderr).
inline Sink set_sink(Sink sink) {
    auto& s = detail::state();
    std::scoped_lock lock(s.mutex);
    return std::exchange(s.sink, std::move(sink));
}

inline void write(Level level, std::string_view message) {
    auto& s = detail::state();
    std::scoped_lock lock(s.mutex);
    if (s.sink) {
        s.sink(level, message);
        return;
    }
    if (level < s.threshold) return;
    static constexpr std::string_view names[] = {"debug", "info", "warning", "quiet"};
    std::cerr << "fraug " << names[static_cast<int>(level)] << ": " << message << '\n';
}

inline void warn(std::string_view message) { write(Level::Warn, message); }
inline void info(std::string_view message) { write(Level::Info, message); }

}  // namespace fraug::log
