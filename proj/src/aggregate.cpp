#include "pwroc/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace pwroc {

void FilterSpec::validate() const {
    if (!std::isfinite(threshold)) {
        throw std::invalid_argument("filter: threshold must be finite");
    }
    switch (kind) {
    case FilterKind::none:
        break;
    case FilterKind::non_trigger:
        if (!(non_trigger_window >= 0.0)) {
            throw std::invalid_argument("filter nontrigger: w2 must be non-negative");
        }
        break;
    case FilterKind::counter:
        if (counter_k < 1) {
            throw std::invalid_argument("filter counter: K must be >= 1");
        }
        if (!(counter_period > 0.0)) {
            throw std::invalid_argument("filter counter: period must be positive");
        }
        break;
    }
}

void AggregationSpec::validate() const {
    if (kind == AggregationKind::ccdf && !std::isfinite(ccdf_threshold)) {
        throw std::invalid_argument("ccdf aggregation: threshold must be finite");
    }
    if (kind == AggregationKind::nab && nab_window < 0.0) {
        throw std::invalid_argument("nab aggregation: window must be positive (or 0 to inherit)");
    }
    filter.validate();
}

double aggregate_mean(std::span<const double> scores) {
    if (scores.empty()) {
        throw std::invalid_argument("aggregate_mean: empty interval");
    }
    double sum = 0.0;
    for (double s : scores) sum += s;
    return sum / static_cast<double>(scores.size());
}

double aggregate_median(std::span<const double> scores) {
    if (scores.empty()) {
        throw std::invalid_argument("aggregate_median: empty interval");
    }
    std::vector<double> sorted(scores.begin(), scores.end());
    const std::size_t mid = (sorted.size() - 1) / 2; // lower median
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    return sorted[mid];
}

double aggregate_ccdf(std::span<const double> scores, double tau) {
    if (scores.empty()) {
        throw std::invalid_argument("aggregate_ccdf: empty interval");
    }
    std::size_t above = 0;
    for (double s : scores) {
        if (s > tau) ++above;
    }
    return static_cast<double>(above) / static_cast<double>(scores.size());
}

double nab_weight(double t, double w) {
    if (!(w > 0.0)) {
        throw std::invalid_argument("nab_weight: window must be positive");
    }
    return 2.0 / (1.0 + std::exp(15.0 * t / w)) - 1.0;
}

double aggregate_nab(std::span<const double> times, std::span<const double> scores, double next_event, double w,
                     bool normalized) {
    if (!(w > 0.0)) {
        throw std::invalid_argument("aggregate_nab: window must be positive");
    }
    return aggregate_weighted(
        times, scores, next_event, [w](double dt) { return nab_weight(dt, w); }, normalized);
}

std::vector<double> filter_non_trigger(std::span<const double> times, std::span<const double> scores, double w2,
                                       double threshold) {
    std::vector<double> out(scores.begin(), scores.end());
    bool active = false;
    double suppress_until = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (active && times[i] <= suppress_until) {
            out[i] = 0.0;
            continue;
        }
        if (out[i] >= threshold) { // kept alarm opens a new suppression window
            active = true;
            suppress_until = times[i] + w2;
        }
    }
    return out;
}

std::vector<double> filter_counter(std::span<const double> times, std::span<const double> scores, std::uint64_t k,
                                   double period, double threshold) {
    std::vector<double> out(scores.size(), 0.0);
    std::deque<double> crossings; // times of crossings within the trailing period
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] < threshold) continue;
        crossings.push_back(times[i]);
        while (!crossings.empty() && crossings.front() < times[i] - period) {
            crossings.pop_front();
        }
        if (crossings.size() >= k) {
            out[i] = 1.0;
        }
    }
    return out;
}

namespace {

std::vector<double> apply_filter(const ScoredSeries& series, const FilterSpec& filter) {
    switch (filter.kind) {
    case FilterKind::non_trigger:
        return filter_non_trigger(series.timestamps(), series.scores(), filter.non_trigger_window, filter.threshold);
    case FilterKind::counter:
        return filter_counter(series.timestamps(), series.scores(), filter.counter_k, filter.counter_period,
                              filter.threshold);
    case FilterKind::none:
        break;
    }
    return {};
}

} // namespace

std::vector<AggregatedSample> aggregate_partition(const Partition& part, const ScoredSeries& series,
                                                  const AggregationSpec& spec) {
    spec.validate();

    const std::vector<double>* scores = &series.scores();
    std::vector<double> filtered;
    if (spec.filter.kind != FilterKind::none) {
        filtered = apply_filter(series, spec.filter);
        scores = &filtered;
    }

    const double nab_w = (spec.nab_window > 0.0) ? spec.nab_window : part.window_length;

    std::vector<AggregatedSample> samples;
    samples.reserve(part.intervals.size());
    std::vector<double> member_scores;
    std::vector<double> member_times;
    for (const IntervalInstance& interval : part.intervals) {
        member_scores.clear();
        for (std::size_t idx : interval.members) member_scores.push_back((*scores)[idx]);

        AggregatedSample sample;
        switch (spec.kind) {
        case AggregationKind::mean:
            sample.value = aggregate_mean(member_scores);
            break;
        case AggregationKind::median:
            sample.value = aggregate_median(member_scores);
            break;
        case AggregationKind::ccdf:
            sample.value = aggregate_ccdf(member_scores, spec.ccdf_threshold);
            break;
        case AggregationKind::nab:
            member_times.clear();
            for (std::size_t idx : interval.members) member_times.push_back(series.timestamps()[idx]);
            sample.value = aggregate_nab(member_times, member_scores, interval.event_time, nab_w, spec.nab_normalized);
            break;
        }
        sample.label = interval.label;
        sample.event_index = interval.event_index;
        sample.k = interval.k;
        samples.push_back(sample);
    }
    return samples;
}

} // namespace pwroc
