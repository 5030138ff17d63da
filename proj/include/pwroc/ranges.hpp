#pragma once

#include "pwroc/series.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pwroc {

/// Contiguous run of instance indices, both ends inclusive.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;
};

/// Ordered, non-overlapping index ranges over the instance sequence.
using LabeledRanges = std::vector<IndexRange>;

/// Positional bias is flat (every position weighs the same); the cardinality
/// flag divides a range's overlap by the number of predicted fragments
/// touching it.
struct RangeMetricConfig {
    double existence_weight = 0.5; ///< alpha in alpha*E + (1-alpha)*O
    bool cardinality = false;
};

/// Maximal runs of 1s become ranges.
LabeledRanges labels_to_ranges(std::span<const std::uint8_t> labels);

/// 1 iff any predicted range shares at least one position with r.
int existence(const IndexRange& r, const LabeledRanges& predicted);

/// Fraction of r's positions covered by the predicted ranges, flat bias.
/// Deliberately scans position by position: this is the fidelity baseline
/// the cost comparison measures, not an optimized evaluator.
double overlap(const IndexRange& r, const LabeledRanges& predicted, bool cardinality);

/// Mean over real ranges of alpha*E(R_i, P) + (1-alpha)*O(R_i, P).
/// Throws when there are no real ranges (the metric is undefined).
double range_recall(const LabeledRanges& real, const LabeledRanges& predicted, const RangeMetricConfig& cfg);

/// Mean over predicted ranges of their overlap with the real ranges
/// (existence reward is reserved for recall). 0 when nothing was predicted.
double range_precision(const LabeledRanges& real, const LabeledRanges& predicted, const RangeMetricConfig& cfg);

/// Harmonic mean; 0 when both inputs are 0.
double range_f1(double precision, double recall);

/// Index runs of samples within w before an event: 0 <= s_i - t_j < w.
LabeledRanges events_to_ranges(const EventLog& events, const ScoredSeries& series, double w);

} // namespace pwroc
