#include "pwroc/roc.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

namespace pwroc {

DegenerateClassError::DegenerateClassError(std::size_t positives, std::size_t negatives)
    : std::runtime_error("roc_curve: both classes required, got " + std::to_string(positives) + " positive and " +
                         std::to_string(negatives) + " negative samples"),
      positives_(positives), negatives_(negatives) {}

RocCurve roc_curve(std::span<const AggregatedSample> samples, double w) {
    std::size_t pos = 0, neg = 0;
    for (const auto& s : samples) {
        (s.label == Label::positive ? pos : neg) += 1;
    }
    if (pos == 0 || neg == 0) {
        throw DegenerateClassError(pos, neg);
    }

    std::vector<std::pair<double, bool>> ranked; // (value, is_positive), descending by value
    ranked.reserve(samples.size());
    for (const auto& s : samples) {
        ranked.emplace_back(s.value, s.label == Label::positive);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    RocCurve curve;
    curve.window_length = w;
    curve.positives = pos;
    curve.negatives = neg;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});

    // Trapezoid area accumulated over integer counts: exact until the single
    // final division, so perfect separation gives exactly 1.
    std::uint64_t tp = 0, fp = 0, area2 = 0;
    std::size_t i = 0;
    while (i < ranked.size()) {
        const double value = ranked[i].first;
        std::uint64_t tp_step = 0, fp_step = 0;
        for (; i < ranked.size() && ranked[i].first == value; ++i) { // tie group: one step
            (ranked[i].second ? tp_step : fp_step) += 1;
        }
        area2 += fp_step * (2 * tp + tp_step);
        tp += tp_step;
        fp += fp_step;
        curve.points.push_back({value, static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos)});
    }
    curve.auc = static_cast<double>(area2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
    return curve;
}

double trapezoid_auc(std::span<const RocPoint> points) {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) * 0.5;
    }
    return area;
}

double auc(const RocCurve& curve) { return trapezoid_auc(curve.points); }

WindowEvaluation evaluate_window(const ScoredSeries& series, const EventLog& events, double w,
                                 const AggregationSpec& spec) {
    WindowEvaluation eval;
    eval.window = w;
    const Partition part = partition(series, events, w);
    eval.counts = part.counts;
    eval.samples = aggregate_partition(part, series, spec);
    for (const auto& s : eval.samples) {
        (s.label == Label::positive ? eval.sample_positives : eval.sample_negatives) += 1;
    }
    if (eval.sample_positives > 0 && eval.sample_negatives > 0) {
        eval.curve = roc_curve(eval.samples, w);
    }
    return eval;
}

std::vector<WindowEvaluation> evaluate_windows(const ScoredSeries& series, const EventLog& events,
                                               std::span<const double> sweep, const AggregationSpec& spec) {
    if (sweep.empty()) {
        throw std::invalid_argument("evaluate_windows: empty window sweep");
    }
    const double wmax = max_admissible_window(events);
    for (double w : sweep) {
        if (!(w > 0.0) || w > wmax) {
            throw std::invalid_argument("sweep window " + std::to_string(w) + " outside (0, " + std::to_string(wmax) +
                                        "]");
        }
    }
    spec.validate();

    std::vector<std::future<WindowEvaluation>> futures;
    futures.reserve(sweep.size());
    for (double w : sweep) {
        futures.push_back(std::async(std::launch::async,
                                     [&, w]() { return evaluate_window(series, events, w, spec); }));
    }
    std::vector<WindowEvaluation> evals;
    evals.reserve(sweep.size());
    for (auto& f : futures) evals.push_back(f.get());
    return evals;
}

RocSurface roc_surface(const ScoredSeries& series, const EventLog& events, std::span<const double> sweep,
                       const AggregationSpec& spec) {
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        if (!(sweep[i] > sweep[i - 1])) {
            throw std::invalid_argument("roc_surface: sweep must be strictly increasing");
        }
    }
    RocSurface surface;
    surface.sweep.assign(sweep.begin(), sweep.end());
    for (WindowEvaluation& eval : evaluate_windows(series, events, sweep, spec)) {
        if (eval.curve) {
            surface.curves.push_back(std::move(eval.curve));
        } else {
            surface.curves.push_back(std::nullopt);
            surface.gaps.push_back({eval.window, eval.sample_positives, eval.sample_negatives});
        }
    }
    return surface;
}

ThresholdMetrics threshold_metrics(std::span<const AggregatedSample> samples, double c) {
    if (samples.empty()) {
        throw std::invalid_argument("threshold_metrics: empty sample set");
    }
    ThresholdMetrics m;
    m.threshold = c;
    for (const auto& s : samples) {
        const bool predicted = s.value > c;
        if (s.label == Label::positive) {
            (predicted ? m.tp : m.fn) += 1;
        } else {
            (predicted ? m.fp : m.tn) += 1;
        }
    }
    m.precision = (m.tp + m.fp > 0) ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp) : 0.0;
    m.recall = (m.tp + m.fn > 0) ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn) : 0.0;
    m.f1 = (m.precision + m.recall > 0.0) ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

double quantile_linear(std::span<const double> values, double q) {
    if (values.empty()) {
        throw std::invalid_argument("quantile_linear: empty input");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("quantile_linear: q must be in [0, 1]");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double label_threshold(std::span<const double> scores, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("label_threshold: alpha must be in [0, 1]");
    }
    const double q05 = quantile_linear(scores, 0.05);
    const double q95 = quantile_linear(scores, 0.95);
    return q05 + alpha * (q95 - q05);
}

std::vector<std::uint8_t> label_map(std::span<const double> scores, double alpha) {
    const double threshold = label_threshold(scores, alpha);
    std::vector<std::uint8_t> labels(scores.size(), 0);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        labels[i] = scores[i] >= threshold ? 1 : 0;
    }
    return labels;
}

} // namespace pwroc
