#include "pwroc/nab.hpp"

#include <cmath>
#include <stdexcept>

namespace pwroc {

void NabWeights::validate() const {
    if (!(tp >= 0.0 && tp <= 1.0) || !(tn >= 0.0 && tn <= 1.0)) {
        throw std::invalid_argument("NabWeights: reward weights must lie in [0, 1]");
    }
    if (!(fp >= -1.0 && fp <= 0.0) || !(fn >= -1.0 && fn <= 0.0)) {
        throw std::invalid_argument("NabWeights: penalty weights must lie in [-1, 0]");
    }
}

double sigma_a(double y, const NabWeights& weights) {
    return (weights.tp - weights.fp) / (1.0 + std::exp(5.0 * y)) - 1.0;
}

double nab_raw_score(std::span<const double> detections, std::size_t missed_windows, const NabWeights& weights) {
    weights.validate();
    double score = 0.0;
    for (double y : detections) score += sigma_a(y, weights);
    return score + weights.fn * static_cast<double>(missed_windows);
}

DetectionSummary extract_detections(std::span<const double> alarm_times, const EventLog& events, double w) {
    if (!(w > 0.0)) {
        throw std::invalid_argument("extract_detections: window must be positive");
    }
    for (std::size_t i = 1; i < alarm_times.size(); ++i) {
        if (!(alarm_times[i] > alarm_times[i - 1])) {
            throw std::invalid_argument("extract_detections: alarm times must be strictly increasing");
        }
    }

    DetectionSummary out;
    std::size_t a = 0;
    for (double si : events.events()) {
        const double lo = si - w;
        while (a < alarm_times.size() && alarm_times[a] <= lo) { // before this (and every later) window
            ++out.stray_alarms;
            ++a;
        }
        if (a < alarm_times.size() && alarm_times[a] <= si) {
            out.positions.push_back((alarm_times[a] - si) / w);
            ++a;
            while (a < alarm_times.size() && alarm_times[a] <= si) ++a; // later alarms in the window are ignored
        } else {
            ++out.missed_windows;
        }
    }
    while (a < alarm_times.size()) { // after the last event
        ++out.stray_alarms;
        ++a;
    }
    return out;
}

double nab_score_alarms(std::span<const double> alarm_times, const EventLog& events, double w,
                        const NabWeights& weights) {
    const DetectionSummary summary = extract_detections(alarm_times, events, w);
    return nab_raw_score(summary.positions, summary.missed_windows, weights) +
           weights.fp * static_cast<double>(summary.stray_alarms);
}

} // namespace pwroc
