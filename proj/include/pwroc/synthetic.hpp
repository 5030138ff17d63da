#pragma once

#include "pwroc/series.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace pwroc {

enum class DetectorModel : std::uint8_t { random, oracle, constant };

/// Recipe for a reproducible synthetic (series, events) pair. The same spec
/// always produces bit-identical output: mt19937_64's word sequence is fixed
/// by the standard, and the float mappings below avoid the
/// implementation-defined library distributions.
struct SyntheticSpec {
    double duration = 10'000.0;
    double sample_interval = 1.0;
    double jitter = 0.0; ///< fraction of the interval, in [0, 1); 0 = uniform sampling
    std::size_t num_events = 10;
    DetectorModel detector = DetectorModel::random;
    double lead = 50.0;  ///< oracle: elevated-score span before each event
    double noise = 0.0;  ///< oracle: gaussian sigma added to the base score
    bool invert = false; ///< oracle: score low before events, high elsewhere
    double constant_value = 0.5;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Samples start at t = 0; events are evenly spaced interior points, so the
/// smallest event gap is duration / (num_events + 1). Oracle scores are 1
/// within `lead` before an event and 0 elsewhere (swapped when inverted),
/// plus optional gaussian noise, clipped to [0, 1].
std::pair<ScoredSeries, EventLog> generate_synthetic(const SyntheticSpec& spec);

namespace detail {

/// Deterministic uniform/normal source on top of raw mt19937_64 words.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Box-Muller transform; consumes two uniforms per draw, keeps no spare.
    double normal(double mean, double sigma);

private:
    std::mt19937_64 engine_;
};

} // namespace detail

} // namespace pwroc
