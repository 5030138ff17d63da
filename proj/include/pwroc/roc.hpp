#pragma once

#include "pwroc/aggregate.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pwroc {

/// Raised when a ROC curve is requested over samples of a single class.
class DegenerateClassError : public std::runtime_error {
public:
    DegenerateClassError(std::size_t positives, std::size_t negatives);
    std::size_t positives() const noexcept { return positives_; }
    std::size_t negatives() const noexcept { return negatives_; }

private:
    std::size_t positives_;
    std::size_t negatives_;
};

/// One operating point: the rates of samples with value >= threshold.
/// Equal-valued samples move the point in a single step.
struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Preceding-window ROC curve for one window length. Points run from (0,0)
/// at the +inf sentinel threshold to (1,1) at the smallest sample value, with
/// fpr and tpr non-decreasing along the way.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
    double window_length = 0.0;
    std::size_t positives = 0; ///< positive samples (preceding windows)
    std::size_t negatives = 0; ///< negative samples (earlier segments)
};

/// Family of pw-ROC curves indexed by window length. Windows whose samples
/// collapse to a single class are gaps, not errors.
struct RocSurface {
    struct Gap {
        double window = 0.0;
        std::size_t positives = 0;
        std::size_t negatives = 0;
    };
    std::vector<double> sweep;                   ///< ascending window lengths
    std::vector<std::optional<RocCurve>> curves; ///< aligned with sweep; nullopt marks a gap
    std::vector<Gap> gaps;
};

/// Confusion counts and derived metrics of the rule "positive iff value > c".
struct ThresholdMetrics {
    double threshold = 0.0;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double precision = 0.0; ///< 0 when nothing is predicted positive
    double recall = 0.0;
    double f1 = 0.0; ///< 0 when precision + recall == 0
};

/// Builds the pw-ROC curve over aggregated samples. TPR conditions on the
/// positive class, FPR on the negative one; AUC is the trapezoidal area
/// (accumulated over exact integer counts, so a perfect separation yields
/// exactly 1). Throws DegenerateClassError unless both classes are present.
RocCurve roc_curve(std::span<const AggregatedSample> samples, double w);

/// Trapezoidal area under the stored curve points.
double auc(const RocCurve& curve);

/// Trapezoidal area over (fpr, tpr) pairs ordered along the curve.
double trapezoid_auc(std::span<const RocPoint> points);

/// Full per-window pipeline output: partition counts, aggregated samples and
/// the curve (or a degenerate-class gap).
struct WindowEvaluation {
    double window = 0.0;
    PartitionCounts counts;
    std::vector<AggregatedSample> samples;
    std::optional<RocCurve> curve;
    std::size_t sample_positives = 0;
    std::size_t sample_negatives = 0;
};

WindowEvaluation evaluate_window(const ScoredSeries& series, const EventLog& events, double w,
                                 const AggregationSpec& spec);

/// Runs evaluate_window for every sweep value; windows are independent and
/// evaluated concurrently, results returned in sweep order.
std::vector<WindowEvaluation> evaluate_windows(const ScoredSeries& series, const EventLog& events,
                                               std::span<const double> sweep, const AggregationSpec& spec);

/// partition -> aggregate -> roc_curve for each window length in the sweep.
/// Sweep values must be ascending and within (0, W_max].
RocSurface roc_surface(const ScoredSeries& series, const EventLog& events, std::span<const double> sweep,
                       const AggregationSpec& spec);

/// Confusion metrics of "value > c" over the samples.
ThresholdMetrics threshold_metrics(std::span<const AggregatedSample> samples, double c);

/// Linear-interpolation quantile (order statistics at (n-1)*q). q in [0, 1].
double quantile_linear(std::span<const double> values, double q);

/// Threshold q_0.05 + alpha * (q_0.95 - q_0.05) of the score distribution.
double label_threshold(std::span<const double> scores, double alpha);

/// Binary labels: 1 iff score >= label_threshold(scores, alpha).
std::vector<std::uint8_t> label_map(std::span<const double> scores, double alpha);

} // namespace pwroc
