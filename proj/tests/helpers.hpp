#pragma once

#include "pwroc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testing {

inline pwroc::ScoredSeries make_series(std::vector<double> times, std::vector<double> scores) {
    return pwroc::ScoredSeries(std::move(times), std::move(scores));
}

/// t = 1..n with scores i/10.
inline pwroc::ScoredSeries iota_series(std::size_t n) {
    std::vector<double> times, scores;
    for (std::size_t i = 1; i <= n; ++i) {
        times.push_back(static_cast<double>(i));
        scores.push_back(static_cast<double>(i) / 10.0);
    }
    return pwroc::ScoredSeries(std::move(times), std::move(scores));
}

/// Random series/events pair. Half the time events are placed exactly on
/// sample timestamps to exercise the at-event boundary.
inline std::pair<pwroc::ScoredSeries, pwroc::EventLog> random_case(std::mt19937_64& rng, std::size_t max_points,
                                                                   std::size_t max_events) {
    std::uniform_int_distribution<std::size_t> nd(2, max_points);
    std::uniform_real_distribution<double> step(0.01, 2.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    const std::size_t n = nd(rng);
    std::vector<double> times(n), scores(n);
    double t = u01(rng) * 10.0;
    for (std::size_t i = 0; i < n; ++i) {
        t += step(rng);
        times[i] = t;
        scores[i] = u01(rng);
    }

    std::uniform_int_distribution<std::size_t> md(1, max_events);
    const std::size_t m = std::min(md(rng), n / 2 + 1);
    std::vector<double> events;
    const bool snap_to_samples = u01(rng) < 0.5;
    while (events.size() < m) {
        double s;
        if (snap_to_samples) {
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            s = times[pick(rng)];
        } else {
            s = times.front() + u01(rng) * (times.back() - times.front());
        }
        events.push_back(s);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    if (events.size() == 1 && !(events.front() > times.front())) {
        events.front() = times.front() + 0.5 * (times.back() - times.front()) + 0.01;
    }
    return {pwroc::ScoredSeries(std::move(times), std::move(scores)),
            pwroc::EventLog(std::move(events))};
}

/// Independent re-derivation of the partition algebra from the membership
/// predicates; throws std::logic_error with a description on any violation.
inline void check_partition_algebra(const pwroc::Partition& part, const pwroc::ScoredSeries& series,
                                    const pwroc::EventLog& events, double w) {
    const auto& ts = series.timestamps();
    const auto& ev = events.events();
    const auto fail = [&](const std::string& message) { throw std::logic_error("partition algebra: " + message); };

    // ownership[j]: 0 = uncovered, 1 = negative interval, 2 = positive
    std::vector<int> ownership(ts.size(), 0);
    std::size_t covered = 0;
    for (const auto& interval : part.intervals) {
        if (!(interval.start < interval.end)) fail("empty or inverted interval bounds");
        const bool positive = interval.label == pwroc::Label::positive;
        if (positive != (interval.k == 0)) fail("label must be positive exactly for k = 0");
        if (interval.members.empty()) fail("stored interval without members");
        for (std::size_t idx : interval.members) {
            if (idx >= ts.size()) fail("member index out of range");
            if (ownership[idx] != 0) fail("sample covered twice");
            if (!(interval.start < ts[idx] && ts[idx] <= interval.end)) fail("member outside half-open bounds");
            ownership[idx] = positive ? 2 : 1;
            ++covered;
        }
    }
    if (covered != part.counts.covered_timestamps) fail("covered count mismatch");
    if (part.counts.covered_timestamps + part.counts.excluded_timestamps != ts.size()) fail("count totals mismatch");

    // Re-derive the positive class from 0 <= s_i - t_j < w, and the coverage
    // domain from the half-open tiling bounds.
    const double s0 = std::min(ev.front(), ts.front());
    for (std::size_t j = 0; j < ts.size(); ++j) {
        bool predicate_positive = false;
        for (double si : ev) {
            const double gap = si - ts[j];
            if (gap >= 0.0 && gap < w) {
                predicate_positive = true;
                break;
            }
        }
        if (predicate_positive != (ownership[j] == 2)) fail("positive class disagrees with the distance predicate");
        if (ts[j] > ev.back() && ownership[j] != 0) fail("sample after the last event not excluded");
        const bool in_domain = (ts[j] > s0 && ts[j] <= ev.back()) || predicate_positive;
        if (in_domain != (ownership[j] != 0)) fail("coverage domain mismatch");
    }
}

} // namespace testing
