#include "pwroc/ranges.hpp"

#include <stdexcept>

namespace pwroc {

LabeledRanges labels_to_ranges(std::span<const std::uint8_t> labels) {
    LabeledRanges ranges;
    std::size_t i = 0;
    while (i < labels.size()) {
        if (!labels[i]) {
            ++i;
            continue;
        }
        const std::size_t first = i;
        while (i + 1 < labels.size() && labels[i + 1]) ++i;
        ranges.push_back({first, i});
        ++i;
    }
    return ranges;
}

int existence(const IndexRange& r, const LabeledRanges& predicted) {
    for (const IndexRange& p : predicted) {
        if (p.first <= r.last && r.first <= p.last) return 1;
    }
    return 0;
}

double overlap(const IndexRange& r, const LabeledRanges& predicted, bool cardinality) {
    std::size_t covered = 0;
    for (std::size_t pos = r.first; pos <= r.last; ++pos) {
        for (const IndexRange& p : predicted) {
            if (p.first <= pos && pos <= p.last) {
                ++covered;
                break;
            }
        }
    }
    double fraction = static_cast<double>(covered) / static_cast<double>(r.last - r.first + 1);
    if (cardinality) {
        std::size_t fragments = 0;
        for (const IndexRange& p : predicted) {
            if (p.first <= r.last && r.first <= p.last) ++fragments;
        }
        if (fragments > 1) fraction /= static_cast<double>(fragments);
    }
    return fraction;
}

double range_recall(const LabeledRanges& real, const LabeledRanges& predicted, const RangeMetricConfig& cfg) {
    if (real.empty()) {
        throw std::invalid_argument("range_recall: undefined without real anomalous ranges");
    }
    const double alpha = cfg.existence_weight;
    double sum = 0.0;
    for (const IndexRange& r : real) {
        sum += alpha * static_cast<double>(existence(r, predicted)) + (1.0 - alpha) * overlap(r, predicted, cfg.cardinality);
    }
    return sum / static_cast<double>(real.size());
}

double range_precision(const LabeledRanges& real, const LabeledRanges& predicted, const RangeMetricConfig& cfg) {
    if (predicted.empty()) return 0.0;
    double sum = 0.0;
    for (const IndexRange& p : predicted) {
        sum += overlap(p, real, cfg.cardinality);
    }
    return sum / static_cast<double>(predicted.size());
}

double range_f1(double precision, double recall) {
    if (precision + recall <= 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

LabeledRanges events_to_ranges(const EventLog& events, const ScoredSeries& series, double w) {
    if (!(w > 0.0)) {
        throw std::invalid_argument("events_to_ranges: window must be positive");
    }
    const auto& ts = series.timestamps();
    const auto& ev = events.events();

    LabeledRanges ranges;
    std::size_t e = 0;
    bool in_run = false;
    std::size_t run_start = 0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
        while (e < ev.size() && ev[e] < ts[j]) ++e; // first event not before t_j
        const bool anomalous = e < ev.size() && ev[e] - ts[j] < w;
        if (anomalous && !in_run) {
            in_run = true;
            run_start = j;
        } else if (!anomalous && in_run) {
            ranges.push_back({run_start, j - 1});
            in_run = false;
        }
    }
    if (in_run) ranges.push_back({run_start, ts.size() - 1});
    return ranges;
}

} // namespace pwroc
