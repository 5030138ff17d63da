#pragma once

#include "pwroc/series.hpp"

#include <cstdint>
#include <vector>

namespace pwroc {

enum class Label : std::uint8_t { negative = 0, positive = 1 };

/// One preceding-window interval instance.
///
/// The k-th window counted back from event s_i covers (s_i - (k+1)w, s_i - kw].
/// Negative windows (k >= 1) are truncated below at the previous event (or at
/// min{s_1, t_1} before the first one); the positive window k = 0 follows the
/// plain distance predicate 0 <= s_i - t_j < w. Membership is half-open:
/// start < t_j <= end, so a sample exactly at an event time is positive.
struct IntervalInstance {
    double start = 0.0; ///< exclusive lower bound
    double end = 0.0;   ///< inclusive upper bound
    std::vector<std::size_t> members; ///< ascending indices into the series
    std::size_t event_index = 0;      ///< governing event s_i
    double event_time = 0.0;
    std::size_t k = 0; ///< window offset from the event
    Label label = Label::negative;
};

struct PartitionCounts {
    std::size_t positive_intervals = 0;
    std::size_t negative_intervals = 0;
    std::size_t covered_timestamps = 0;
    std::size_t excluded_timestamps = 0; ///< at/below the global lower bound, or after the last event
};

/// All interval instances for one window length, ordered by time.
/// Positive and negative intervals partition the covered samples; no sample
/// appears in two intervals. Intervals that would contain no sample are
/// dropped (there is nothing to aggregate in them).
struct Partition {
    std::vector<IntervalInstance> intervals;
    double window_length = 0.0;
    PartitionCounts counts;
};

/// How the harness selects window lengths for an evaluation.
struct WindowConfig {
    enum class Mode { single, sweep, automatic };
    Mode mode = Mode::single;
    double length = 0.0;                              // single
    double sweep_min = 0.0, sweep_max = 0.0, sweep_step = 0.0; // sweep

    /// Expands to the concrete ascending window list and checks every value
    /// against (0, W_max] for the given data. Throws std::invalid_argument on
    /// an ill-formed or out-of-range specification.
    std::vector<double> resolve(const EventLog& events, const ScoredSeries& series) const;
};

/// Largest admissible window length: the minimum gap between consecutive
/// events, or s_1 - t_1 when there is a single event. Throws when a single
/// event lies at or before the first sample (no admissible window).
double compute_wmax(const EventLog& events, const ScoredSeries& series);

/// Hard upper bound on a window length: the minimum event gap when there are
/// two or more events (wider windows would overlap), unbounded for a single
/// event (there is nothing to collide with).
double max_admissible_window(const EventLog& events);

/// Rule-of-thumb window: 10% of the studied period divided by the number of
/// events, clamped to (0, W_max].
double default_window(const EventLog& events, const ScoredSeries& series);

/// Transforms timestamped samples into preceding-window interval instances
/// for window length w in (0, W_max]. Runs in O(n + number of windows).
Partition partition(const ScoredSeries& series, const EventLog& events, double w);

} // namespace pwroc
