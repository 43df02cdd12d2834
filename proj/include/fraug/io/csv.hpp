#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/time_series.hpp"

namespace fraug::io {

/// How the x column of a dataset file was given.
enum class Abscissa { Index, Numeric, Timestamp };

/**
 * A parsed CSV file. Timestamps become seconds since the first row;
 * time_origin keeps the first row's Unix time for writing them back.
 */
struct Dataset {
    TimeSeries series;
    Abscissa abscissa = Abscissa::Index;
    std::int64_t time_origin = 0;
    std::string x_header = "x";
    std::string value_header = "value";
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline std::optional<int> parse_fixed_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// Unix seconds for "YYYY-MM-DD[T| ]HH:MM[:SS][Z]", read as UTC.
inline std::optional<std::int64_t> parse_timestamp(std::string_view s) {
    using namespace std::chrono;
    if (!s.empty() && s.back() == 'Z') s.remove_suffix(1);
    if (s.size() != 16 && s.size() != 19) return std::nullopt;
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':') {
        return std::nullopt;
    }
    if (s.size() == 19 && s[16] != ':') return std::nullopt;
    const auto y = detail::parse_fixed_int(s.substr(0, 4));
    const auto mo = detail::parse_fixed_int(s.substr(5, 2));
    const auto d = detail::parse_fixed_int(s.substr(8, 2));
    const auto h = detail::parse_fixed_int(s.substr(11, 2));
    const auto mi = detail::parse_fixed_int(s.substr(14, 2));
    const auto sec = s.size() == 19 ? detail::parse_fixed_int(s.substr(17, 2)) : std::optional<int>(0);
    if (!y || !mo || !d || !h || !mi || !sec) return std::nullopt;
    const year_month_day date{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!date.ok() || *h > 23 || *mi > 59 || *sec > 59) return std::nullopt;
    const auto tp = sys_days{date} + hours{*h} + minutes{*mi} + seconds{*sec};
    return tp.time_since_epoch().count();
}

/// "YYYY-MM-DDTHH:MM:SS" in UTC.
inline std::string format_timestamp(std::int64_t unix_seconds) {
    using namespace std::chrono;
    const sys_seconds tp{seconds{unix_seconds}};
    const auto day_point = floor<days>(tp);
    const year_month_day date{day_point};
    const hh_mm_ss time{tp - day_point};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                  static_cast<long>(time.hours().count()), static_cast<long>(time.minutes().count()),
                  static_cast<long>(time.seconds().count()));
    return buf;
}

/// Two decimals; never "-0.00".
inline std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string out = buf;
    if (out == "-0.00") out = "0.00";
    return out;
}

/// Shortest representation that reads back to the same double.
inline std::string format_abscissa(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/**
 * @brief Reads a headed CSV with columns `value`, `x,value` or `timestamp,value`.
 *
 * A two-column file is a timestamp file when its first data row's x field
 * parses as ISO-8601. Blank lines are skipped.
 * @throws Error ParseError naming the source and line; NonMonotonicAbscissa.
 */
inline Dataset parse_csv(std::istream& in, const std::string& source = "<input>") {
    std::string line;
    std::size_t line_no = 0;
    auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };

    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        for (auto f : detail::split_fields(t)) header.emplace_back(f);
        break;
    }
    if (header.empty()) fail(ErrorCode::ParseError, source + ": missing header row");
    if (header.size() > 2) {
        fail(ErrorCode::ParseError, where() + "expected 1 or 2 columns, found " + std::to_string(header.size()));
    }

    Dataset ds;
    ds.value_header = header.back();
    if (header.size() == 2) ds.x_header = header.front();
    bool first_row = true;
    std::int64_t origin = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        const auto fields = detail::split_fields(t);
        if (fields.size() != header.size()) {
            fail(ErrorCode::ParseError, where() + "expected " + std::to_string(header.size()) +
                                            " fields, found " + std::to_string(fields.size()));
        }
        const auto value = detail::parse_double(fields.back());
        if (!value) fail(ErrorCode::ParseError, where() + "invalid value '" + std::string(fields.back()) + "'");

        double x = static_cast<double>(ds.series.size());
        if (header.size() == 2) {
            if (first_row) {
                if (auto ts = parse_timestamp(fields.front())) {
                    ds.abscissa = Abscissa::Timestamp;
                    origin = *ts;
                    ds.time_origin = origin;
                } else {
                    ds.abscissa = Abscissa::Numeric;
                }
            }
            if (ds.abscissa == Abscissa::Timestamp) {
                const auto ts = parse_timestamp(fields.front());
                if (!ts) fail(ErrorCode::ParseError, where() + "invalid timestamp '" + std::string(fields.front()) + "'");
                x = static_cast<double>(*ts - origin);
            } else {
                const auto xv = detail::parse_double(fields.front());
                if (!xv) fail(ErrorCode::ParseError, where() + "invalid x '" + std::string(fields.front()) + "'");
                x = *xv;
            }
        }
        first_row = false;
        ds.series.push_back({x, *value});
    }
    if (ds.series.empty()) fail(ErrorCode::EmptyInput, source + ": no data rows");
    require_strictly_increasing(ds.series);
    return ds;
}

/// @throws Error IoError when the file cannot be opened.
inline Dataset read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    return parse_csv(in, path);
}

/**
 * Writes `layout`'s columns with `series`' data. The x column is omitted
 * only for index-abscissa data still sitting at 0, 1, 2, ...; timestamps are
 * rounded to whole seconds.
 */
inline void write_csv(std::ostream& out, const TimeSeries& series, const Dataset& layout = {}) {
    bool integral_index = layout.abscissa == Abscissa::Index;
    for (std::size_t i = 0; integral_index && i < series.size(); ++i) {
        integral_index = series[i].x == static_cast<double>(i);
    }
    if (integral_index) {
        out << layout.value_header << '\n';
        for (const auto& p : series) out << format_value(p.y) << '\n';
        return;
    }
    const std::string x_header = layout.abscissa == Abscissa::Index ? "x" : layout.x_header;
    out << x_header << ',' << layout.value_header << '\n';
    for (const auto& p : series) {
        if (layout.abscissa == Abscissa::Timestamp) {
            out << format_timestamp(layout.time_origin + static_cast<std::int64_t>(std::llround(p.x)));
        } else {
            out << format_abscissa(p.x);
        }
        out << ',' << format_value(p.y) << '\n';
    }
}

inline std::string to_csv(const TimeSeries& series, const Dataset& layout = {}) {
    std::ostringstream out;
    write_csv(out, series, layout);
    return out.str();
}

/// @throws Error IoError
inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    out << contents;
    if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace fraug::io
