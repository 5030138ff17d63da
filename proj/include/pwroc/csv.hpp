#pragma once

#include "pwroc/series.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace pwroc {

/// Parses a timestamp token: either numeric epoch seconds or an ISO-8601
/// date/time (`YYYY-MM-DD[THH:MM:SS[.frac]][Z|+HH:MM|-HH:MM]`, UTC assumed
/// when no offset is given). Throws std::invalid_argument on anything else.
double parse_time(std::string_view token);

/// Formats with 17 significant digits, enough to round-trip a double.
std::string format_double(double value);

/// Loads a `timestamp,score` CSV into a series. Rejects malformed rows,
/// unsorted or duplicate timestamps and non-finite scores, naming the
/// offending line.
ScoredSeries load_scores(const std::filesystem::path& path);

/// Loads a single-column `timestamp` CSV of event times; same checks.
EventLog load_events(const std::filesystem::path& path);

void write_scores_csv(const std::filesystem::path& path, const ScoredSeries& series);
void write_events_csv(const std::filesystem::path& path, const EventLog& events);

} // namespace pwroc
