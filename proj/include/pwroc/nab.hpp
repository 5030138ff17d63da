#pragma once

#include "pwroc/series.hpp"

#include <span>
#include <vector>

namespace pwroc {

/// Per-outcome weights of the window-based scoring function. Reward weights
/// lie in [0, 1], penalty weights in [-1, 0].
struct NabWeights {
    double tp = 1.0;
    double tn = 1.0;
    double fp = -1.0;
    double fn = -1.0;

    void validate() const;
};

/// sigma_A(y) = (A_TP - A_FP) / (1 + e^(5y)) - 1 for the relative alarm
/// position y (y <= 0 inside the window, 0 at the event, > 0 after it).
/// With default weights the value at y = 0 is exactly 0.
double sigma_a(double y, const NabWeights& weights = {});

/// Raw score: sum of sigma_A over the kept detections plus A_FN times the
/// number of missed windows.
double nab_raw_score(std::span<const double> detections, std::size_t missed_windows,
                     const NabWeights& weights = {});

/// Outcome of matching an alarm stream against the event windows.
struct DetectionSummary {
    std::vector<double> positions;  ///< relative position of the first alarm per detected window
    std::size_t missed_windows = 0; ///< windows without any alarm
    std::size_t stray_alarms = 0;   ///< alarms outside every window
};

/// Matches increasing alarm times against the windows (s_i - w, s_i]. Only
/// the first alarm in a window is kept (later ones are ignored); positions
/// are normalized by w, so they lie in (-1, 0].
DetectionSummary extract_detections(std::span<const double> alarm_times, const EventLog& events, double w);

/// Convenience raw score over an alarm stream: kept detections score
/// sigma_A, missed windows score A_FN, and each stray alarm scores a flat
/// A_FP.
double nab_score_alarms(std::span<const double> alarm_times, const EventLog& events, double w,
                        const NabWeights& weights = {});

} // namespace pwroc
