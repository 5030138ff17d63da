#pragma once

#include <cstddef>
#include <vector>

namespace pwroc {

/// Ordered (timestamp, anomaly score) pairs produced by a detector.
///
/// Timestamps are real-valued seconds since epoch and must be strictly
/// increasing; scores must be finite. Instances are immutable after
/// construction and safe to share across threads.
class ScoredSeries {
public:
    ScoredSeries(std::vector<double> timestamps, std::vector<double> scores);

    const std::vector<double>& timestamps() const noexcept { return timestamps_; }
    const std::vector<double>& scores() const noexcept { return scores_; }
    std::size_t size() const noexcept { return timestamps_.size(); }
    double front_time() const noexcept { return timestamps_.front(); }
    double back_time() const noexcept { return timestamps_.back(); }

    /// Studied period t_N - t_1.
    double span() const noexcept { return timestamps_.back() - timestamps_.front(); }

private:
    std::vector<double> timestamps_;
    std::vector<double> scores_;
};

/// Strictly increasing timestamps of the annotated events of interest,
/// in the same time unit as the series they annotate.
class EventLog {
public:
    explicit EventLog(std::vector<double> events);

    const std::vector<double>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    double front() const noexcept { return events_.front(); }
    double back() const noexcept { return events_.back(); }

private:
    std::vector<double> events_;
};

} // namespace pwroc
