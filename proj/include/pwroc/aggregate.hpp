#pragma once

#include "pwroc/partition.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace pwroc {

enum class FilterKind : std::uint8_t { none, non_trigger, counter };

/// Optional alarm-filtering pre-pass applied to the whole score stream
/// before windowing (suppression spans interval boundaries).
struct FilterSpec {
    FilterKind kind = FilterKind::none;
    double non_trigger_window = 0.0; ///< w2
    std::uint64_t counter_k = 1;     ///< K
    double counter_period = 0.0;
    double threshold = 0.5; ///< alarm level the filters react to

    void validate() const;
};

enum class AggregationKind : std::uint8_t { mean, median, ccdf, nab };

/// How per-sample scores inside one interval collapse to a single value.
struct AggregationSpec {
    AggregationKind kind = AggregationKind::mean;
    double ccdf_threshold = 0.0;
    double nab_window = 0.0; ///< 0 means: use the partition's own window length
    bool nab_normalized = false;
    FilterSpec filter;

    void validate() const;
};

/// One interval's aggregated score with its class label and provenance.
struct AggregatedSample {
    double value = 0.0;
    Label label = Label::negative;
    std::size_t event_index = 0;
    std::size_t k = 0;
};

/// Arithmetic mean. Throws on an empty sequence.
double aggregate_mean(std::span<const double> scores);

/// Lower median (order statistic at index (n-1)/2). Throws on empty.
double aggregate_median(std::span<const double> scores);

/// Fraction of scores strictly greater than tau, in [0, 1]. Throws on empty.
double aggregate_ccdf(std::span<const double> scores, double tau);

/// Earliness weight sigma_w(t) = 2 / (1 + e^(15 t / w)) - 1 for the signed
/// offset t = t_j - s_next (non-positive inside a preceding window). Zero at
/// the event, close to 1 one window before it, strictly decreasing and odd.
double nab_weight(double t, double w);

/// Weighted-sum core shared by the earliness aggregation; the weight functor
/// maps a signed offset to a weight. Exposed so tests can force unit weights.
template <class WeightFn>
double aggregate_weighted(std::span<const double> times, std::span<const double> scores, double next_event,
                          WeightFn&& weight, bool normalized) {
    if (times.empty() || times.size() != scores.size()) {
        throw std::invalid_argument("aggregate_weighted: empty interval or length mismatch");
    }
    double sum = 0.0, weight_sum = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double wgt = weight(times[i] - next_event);
        sum += wgt * scores[i];
        weight_sum += wgt;
    }
    if (!normalized) return sum;
    if (weight_sum == 0.0) return 0.0; // all members at the event itself
    return sum / weight_sum;
}

/// Earliness-aware aggregation: sum of sigma_w-weighted scores, optionally
/// normalized by the weight sum. Far from the event all weights are ~1, so
/// the normalized form approaches the plain mean on negative intervals.
double aggregate_nab(std::span<const double> times, std::span<const double> scores, double next_event, double w,
                     bool normalized);

/// Suppresses every score within w2 after a kept alarm (score >= threshold):
/// suppressed positions are replaced by 0. Output length equals input length.
std::vector<double> filter_non_trigger(std::span<const double> times, std::span<const double> scores, double w2,
                                       double threshold);

/// Emits 1 at a threshold crossing only when at least K crossings (itself
/// included) occurred within the trailing period; every other output is 0.
std::vector<double> filter_counter(std::span<const double> times, std::span<const double> scores, std::uint64_t k,
                                   double period, double threshold);

/// Applies the spec's filter once to the full score stream, then aggregates
/// each interval's member scores. One sample per interval, labels carried
/// over from the partition.
std::vector<AggregatedSample> aggregate_partition(const Partition& part, const ScoredSeries& series,
                                                  const AggregationSpec& spec);

} // namespace pwroc
