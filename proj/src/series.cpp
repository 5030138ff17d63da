#include "pwroc/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pwroc {

namespace {

void check_strictly_increasing(const std::vector<double>& values, const char* what) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw std::invalid_argument(std::string(what) + ": timestamps must be strictly increasing (violation at position " +
                                        std::to_string(i) + ")");
        }
    }
}

} // namespace

ScoredSeries::ScoredSeries(std::vector<double> timestamps, std::vector<double> scores)
    : timestamps_(std::move(timestamps)), scores_(std::move(scores)) {
    if (timestamps_.empty()) {
        throw std::invalid_argument("ScoredSeries: at least one timestamp required");
    }
    if (scores_.size() != timestamps_.size()) {
        throw std::invalid_argument("ScoredSeries: scores length (" + std::to_string(scores_.size()) +
                                    ") must equal timestamps length (" + std::to_string(timestamps_.size()) + ")");
    }
    check_strictly_increasing(timestamps_, "ScoredSeries");
    for (std::size_t i = 0; i < scores_.size(); ++i) {
        if (!std::isfinite(scores_[i])) {
            throw std::invalid_argument("ScoredSeries: non-finite score at position " + std::to_string(i));
        }
    }
    for (double t : timestamps_) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("ScoredSeries: non-finite timestamp");
        }
    }
}

EventLog::EventLog(std::vector<double> events) : events_(std::move(events)) {
    if (events_.empty()) {
        throw std::invalid_argument("EventLog: at least one event required");
    }
    for (double s : events_) {
        if (!std::isfinite(s)) {
            throw std::invalid_argument("EventLog: non-finite event timestamp");
        }
    }
    check_strictly_increasing(events_, "EventLog");
}

} // namespace pwroc
