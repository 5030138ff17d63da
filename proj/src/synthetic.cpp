#include "pwroc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pwroc {

namespace detail {

double Rng::normal(double mean, double sigma) {
    // Guard against log(0): push u1 away from zero.
    const double u1 = std::max(uniform(), 0x1.0p-53);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace detail

void SyntheticSpec::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("synthetic: duration must be positive");
    if (!(sample_interval > 0.0)) throw std::invalid_argument("synthetic: sample interval must be positive");
    if (!(jitter >= 0.0 && jitter < 1.0)) throw std::invalid_argument("synthetic: jitter must lie in [0, 1)");
    if (num_events < 1) throw std::invalid_argument("synthetic: at least one event required");
    if (detector == DetectorModel::oracle) {
        if (!(lead > 0.0)) throw std::invalid_argument("synthetic: oracle lead must be positive");
        if (!(noise >= 0.0)) throw std::invalid_argument("synthetic: noise must be non-negative");
        const double gap = duration / static_cast<double>(num_events + 1);
        if (lead > gap) throw std::invalid_argument("synthetic: oracle lead exceeds the event gap");
    }
}

std::pair<ScoredSeries, EventLog> generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    detail::Rng rng(spec.seed);

    std::vector<double> timestamps;
    timestamps.reserve(static_cast<std::size_t>(spec.duration / spec.sample_interval) + 2);
    double t = 0.0;
    while (t <= spec.duration) {
        timestamps.push_back(t);
        double step = spec.sample_interval;
        if (spec.jitter > 0.0) {
            step *= 1.0 + spec.jitter * (2.0 * rng.uniform() - 1.0);
        }
        t += step;
    }

    std::vector<double> events;
    events.reserve(spec.num_events);
    const double gap = spec.duration / static_cast<double>(spec.num_events + 1);
    for (std::size_t i = 1; i <= spec.num_events; ++i) {
        events.push_back(gap * static_cast<double>(i));
    }

    std::vector<double> scores(timestamps.size(), 0.0);
    switch (spec.detector) {
    case DetectorModel::random:
        for (double& s : scores) s = rng.uniform();
        break;
    case DetectorModel::constant:
        for (double& s : scores) s = spec.constant_value;
        break;
    case DetectorModel::oracle: {
        const double high = spec.invert ? 0.0 : 1.0;
        const double low = spec.invert ? 1.0 : 0.0;
        std::size_t e = 0;
        for (std::size_t j = 0; j < timestamps.size(); ++j) {
            while (e < events.size() && events[e] < timestamps[j]) ++e;
            const bool within_lead = e < events.size() && events[e] - timestamps[j] < spec.lead;
            double s = within_lead ? high : low;
            if (spec.noise > 0.0) {
                s = std::clamp(s + rng.normal(0.0, spec.noise), 0.0, 1.0);
            }
            scores[j] = s;
        }
        break;
    }
    }

    return {ScoredSeries(std::move(timestamps), std::move(scores)), EventLog(std::move(events))};
}

} // namespace pwroc
