#include "pwroc/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace pwroc {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& message) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + message);
}

bool parse_full_double(std::string_view token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end;
}

bool parse_int_field(std::string_view token, int& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end;
}

// Days between 1970-01-01 and y-m-d in the proleptic Gregorian calendar.
long long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

unsigned days_in_month(int y, unsigned m) {
    static constexpr unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

double parse_iso8601(std::string_view token) {
    const auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("invalid timestamp '" + std::string(token) + "'");
    };
    // Date part: YYYY-MM-DD
    if (token.size() < 10 || token[4] != '-' || token[7] != '-') throw bad();
    int year = 0, month = 0, day = 0;
    if (!parse_int_field(token.substr(0, 4), year) || !parse_int_field(token.substr(5, 2), month) ||
        !parse_int_field(token.substr(8, 2), day)) {
        throw bad();
    }
    if (month < 1 || month > 12 || day < 1 || day > static_cast<int>(days_in_month(year, static_cast<unsigned>(month)))) {
        throw bad();
    }

    int hour = 0, minute = 0, second = 0;
    double fraction = 0.0;
    double offset_seconds = 0.0;
    std::string_view rest = token.substr(10);
    if (!rest.empty()) {
        if (rest.front() != 'T' && rest.front() != ' ') throw bad();
        rest.remove_prefix(1);
        if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':') throw bad();
        if (!parse_int_field(rest.substr(0, 2), hour) || !parse_int_field(rest.substr(3, 2), minute) ||
            !parse_int_field(rest.substr(6, 2), second)) {
            throw bad();
        }
        if (hour > 23 || minute > 59 || second > 60) throw bad(); // 60 admits leap-second stamps
        rest.remove_prefix(8);
        if (!rest.empty() && rest.front() == '.') {
            std::size_t digits = 1;
            while (digits < rest.size() && rest[digits] >= '0' && rest[digits] <= '9') ++digits;
            if (digits == 1) throw bad();
            double frac = 0.0;
            if (!parse_full_double(rest.substr(0, digits), frac)) throw bad();
            fraction = frac;
            rest.remove_prefix(digits);
        }
        if (!rest.empty()) {
            const char sign = rest.front();
            if (sign == 'Z') {
                if (rest.size() != 1) throw bad();
            } else if (sign == '+' || sign == '-') {
                rest.remove_prefix(1);
                int oh = 0, om = 0;
                if (rest.size() == 5 && rest[2] == ':') {
                    if (!parse_int_field(rest.substr(0, 2), oh) || !parse_int_field(rest.substr(3, 2), om)) throw bad();
                } else if (rest.size() == 4) {
                    if (!parse_int_field(rest.substr(0, 2), oh) || !parse_int_field(rest.substr(2, 2), om)) throw bad();
                } else if (rest.size() == 2) {
                    if (!parse_int_field(rest.substr(0, 2), oh)) throw bad();
                } else {
                    throw bad();
                }
                if (oh > 23 || om > 59) throw bad();
                offset_seconds = static_cast<double>(oh * 3600 + om * 60);
                if (sign == '-') offset_seconds = -offset_seconds;
            } else {
                throw bad();
            }
        }
    }

    const long long days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    const double seconds = static_cast<double>(days) * 86400.0 +
                           static_cast<double>(hour * 3600 + minute * 60 + second) + fraction;
    return seconds - offset_seconds;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

struct CsvReader {
    std::ifstream stream;
    std::filesystem::path path;
    std::size_t line_number = 0;
    std::string line;

    explicit CsvReader(const std::filesystem::path& p) : stream(p), path(p) {
        if (!stream) {
            throw std::runtime_error("cannot open " + p.string());
        }
    }

    bool next() {
        if (!std::getline(stream, line)) return false;
        ++line_number;
        return true;
    }
};

} // namespace

double parse_time(std::string_view token) {
    token = trim(token);
    if (token.empty()) {
        throw std::invalid_argument("empty timestamp");
    }
    double numeric = 0.0;
    if (parse_full_double(token, numeric)) {
        if (!std::isfinite(numeric)) {
            throw std::invalid_argument("non-finite timestamp '" + std::string(token) + "'");
        }
        return numeric;
    }
    return parse_iso8601(token);
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

ScoredSeries load_scores(const std::filesystem::path& path) {
    CsvReader reader(path);
    if (!reader.next()) fail(path, 1, "missing header, expected 'timestamp,score'");
    if (trim(reader.line) != "timestamp,score") fail(path, 1, "bad header '" + reader.line + "', expected 'timestamp,score'");

    std::vector<double> timestamps, scores;
    while (reader.next()) {
        const std::string_view row = trim(reader.line);
        if (row.empty()) continue;
        const std::size_t comma = row.find(',');
        if (comma == std::string_view::npos) fail(path, reader.line_number, "expected 'timestamp,score' row");
        double t = 0.0, score = 0.0;
        try {
            t = parse_time(row.substr(0, comma));
        } catch (const std::exception& e) {
            fail(path, reader.line_number, e.what());
        }
        if (!parse_full_double(trim(row.substr(comma + 1)), score)) {
            fail(path, reader.line_number, "malformed score '" + std::string(row.substr(comma + 1)) + "'");
        }
        if (!std::isfinite(score)) fail(path, reader.line_number, "non-finite score");
        if (!timestamps.empty()) {
            if (t == timestamps.back()) fail(path, reader.line_number, "duplicate timestamp");
            if (t < timestamps.back()) fail(path, reader.line_number, "timestamps not sorted");
        }
        timestamps.push_back(t);
        scores.push_back(score);
    }
    if (timestamps.empty()) fail(path, reader.line_number + 1, "no data rows");
    return ScoredSeries(std::move(timestamps), std::move(scores));
}

EventLog load_events(const std::filesystem::path& path) {
    CsvReader reader(path);
    if (!reader.next()) fail(path, 1, "missing header, expected 'timestamp'");
    if (trim(reader.line) != "timestamp") fail(path, 1, "bad header '" + reader.line + "', expected 'timestamp'");

    std::vector<double> events;
    while (reader.next()) {
        const std::string_view row = trim(reader.line);
        if (row.empty()) continue;
        double t = 0.0;
        try {
            t = parse_time(row);
        } catch (const std::exception& e) {
            fail(path, reader.line_number, e.what());
        }
        if (!events.empty()) {
            if (t == events.back()) fail(path, reader.line_number, "duplicate timestamp");
            if (t < events.back()) fail(path, reader.line_number, "timestamps not sorted");
        }
        events.push_back(t);
    }
    if (events.empty()) fail(path, reader.line_number + 1, "no data rows");
    return EventLog(std::move(events));
}

void write_scores_csv(const std::filesystem::path& path, const ScoredSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "timestamp,score\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_double(series.timestamps()[i]) << ',' << format_double(series.scores()[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_events_csv(const std::filesystem::path& path, const EventLog& events) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "timestamp\n";
    for (double s : events.events()) {
        out << format_double(s) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace pwroc
