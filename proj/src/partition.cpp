#include "pwroc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pwroc {

double compute_wmax(const EventLog& events, const ScoredSeries& series) {
    const auto& ev = events.events();
    if (ev.size() >= 2) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < ev.size(); ++i) {
            best = std::min(best, ev[i] - ev[i - 1]);
        }
        return best;
    }
    // Single event: the largest window fully preceding it.
    const double w = ev.front() - series.front_time();
    if (!(w > 0.0)) {
        throw std::invalid_argument("compute_wmax: single event at or before the first sample leaves no admissible window");
    }
    return w;
}

double max_admissible_window(const EventLog& events) {
    const auto& ev = events.events();
    if (ev.size() < 2) {
        return std::numeric_limits<double>::infinity();
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ev.size(); ++i) {
        best = std::min(best, ev[i] - ev[i - 1]);
    }
    return best;
}

double default_window(const EventLog& events, const ScoredSeries& series) {
    if (!(series.span() > 0.0)) {
        throw std::invalid_argument("default_window: series must span a positive duration");
    }
    const double wmax = compute_wmax(events, series);
    const double w = 0.1 * series.span() / static_cast<double>(events.size());
    return std::min(w, wmax);
}

std::vector<double> WindowConfig::resolve(const EventLog& events, const ScoredSeries& series) const {
    const double wmax = max_admissible_window(events);
    std::vector<double> windows;
    switch (mode) {
    case Mode::single:
        windows.push_back(length);
        break;
    case Mode::automatic:
        windows.push_back(default_window(events, series));
        break;
    case Mode::sweep: {
        if (!(sweep_step > 0.0) || !(sweep_min > 0.0) || sweep_max < sweep_min) {
            throw std::invalid_argument("window sweep requires 0 < min <= max and step > 0");
        }
        // Tolerate the accumulated rounding of min + i*step at the upper end.
        const double limit = sweep_max + sweep_step * 1e-9;
        for (std::size_t i = 0;; ++i) {
            const double w = sweep_min + static_cast<double>(i) * sweep_step;
            if (w > limit) break;
            windows.push_back(std::min(w, sweep_max));
        }
        break;
    }
    }
    for (double w : windows) {
        if (!(w > 0.0) || w > wmax) {
            throw std::invalid_argument("window length " + std::to_string(w) + " outside (0, " + std::to_string(wmax) + "]");
        }
    }
    return windows;
}

Partition partition(const ScoredSeries& series, const EventLog& events, double w) {
    const double wmax = max_admissible_window(events);
    if (!(w > 0.0) || w > wmax) {
        throw std::invalid_argument("partition: window length " + std::to_string(w) + " outside (0, " +
                                    std::to_string(wmax) + "]");
    }

    const auto& ts = series.timestamps();
    const auto& ev = events.events();
    const std::size_t n = ts.size();

    Partition out;
    out.window_length = w;

    const double s0 = std::min(ev.front(), ts.front());

    // The lower boundary is exclusive for the negative windows, but the
    // positive window follows the plain distance predicate 0 <= s_i - t_j < w.
    // The only sample that can sit at or below s0 is the very first one; it
    // still belongs to the first event's positive window when close enough.
    const bool first_in_positive = ts.front() <= ev.front() && ev.front() - ts.front() < w;

    std::size_t j = 0;
    while (j < n && ts[j] <= s0) ++j; // skips at most the first sample

    const auto emit = [&](IntervalInstance&& interval) {
        out.counts.covered_timestamps += interval.members.size();
        if (interval.label == Label::positive) {
            ++out.counts.positive_intervals;
        } else {
            ++out.counts.negative_intervals;
        }
        out.intervals.push_back(std::move(interval));
    };

    std::vector<double> ends; // window upper bounds for one event, k = 0 first
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const double si = ev[i];
        const double lower = (i == 0) ? s0 : ev[i - 1];

        // Windows counted back from the event tile (lower, si]; the oldest
        // negative one may be a shorter remainder.
        ends.clear();
        for (std::size_t k = 0;; ++k) {
            const double end = si - static_cast<double>(k) * w;
            if (end <= lower) break;
            ends.push_back(end);
        }

        for (std::size_t b = ends.size(); b-- > 0;) { // oldest window first
            const std::size_t k = b;
            IntervalInstance interval;
            interval.end = ends[b];
            interval.start = (k == 0) ? si - w : std::max(si - static_cast<double>(k + 1) * w, lower);
            if (i == 0 && k == 0 && first_in_positive) {
                interval.members.push_back(0);
            }
            while (j < n && ts[j] <= interval.end) {
                interval.members.push_back(j);
                ++j;
            }
            if (interval.members.empty()) continue;
            interval.event_index = i;
            interval.event_time = si;
            interval.k = k;
            interval.label = (k == 0) ? Label::positive : Label::negative;
            emit(std::move(interval));
        }

        // First event exactly at the first sample: the tiling above is empty
        // (si == lower) yet the sample is at distance 0, hence positive.
        if (i == 0 && ends.empty() && first_in_positive) {
            IntervalInstance interval;
            interval.start = si - w;
            interval.end = si;
            interval.members.push_back(0);
            interval.event_index = 0;
            interval.event_time = si;
            interval.k = 0;
            interval.label = Label::positive;
            emit(std::move(interval));
        }
    }

    out.counts.excluded_timestamps = n - out.counts.covered_timestamps;
    return out;
}

} // namespace pwroc
