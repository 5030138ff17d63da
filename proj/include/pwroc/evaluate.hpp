#pragma once

#include "pwroc/csv.hpp"
#include "pwroc/ranges.hpp"
#include "pwroc/roc.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pwroc {

/// Everything one evaluation run needs: inputs, window selection, scoring
/// configuration and the output location.
struct EvalConfig {
    std::filesystem::path scores_path;
    std::filesystem::path events_path;
    WindowConfig window;
    AggregationSpec aggregation;
    std::vector<double> alphas; ///< label-mapping thresholds for metric tables
    RangeMetricConfig range_config;
    std::filesystem::path out_dir;
    std::uint64_t seed = 1; ///< echoed into artifacts for provenance

    void validate() const;
};

/// Parses `mean | median | ccdf:<tau> | nab[:norm]`.
AggregationSpec parse_aggregation(std::string_view text);
/// Parses `none | nontrigger:<w2>[:<thr>] | counter:<K>:<period>[:<thr>]`.
FilterSpec parse_filter(std::string_view text);
std::string to_string(const AggregationSpec& spec);
std::string to_string(const FilterSpec& spec);

struct EvalOutputs {
    std::vector<double> windows;
    std::vector<WindowEvaluation> evaluations; ///< aligned with windows
    std::vector<std::filesystem::path> written;
    std::string window_note; ///< set when the window came from the auto rule
};

/// Full evaluation pipeline: resolve windows, run partition/aggregate/curve
/// per window (degenerate windows become gaps), and write curve_<w>.csv,
/// surface.csv, summary.json and (with alphas) threshold_metrics.csv under
/// out_dir. Identical inputs and config produce byte-identical artifacts.
EvalOutputs run_evaluate(const EvalConfig& config);
EvalOutputs run_evaluate(const EvalConfig& config, const ScoredSeries& series, const EventLog& events);

struct CompareRow {
    double window = 0.0;
    double alpha = 0.0;
    double label_threshold = 0.0; ///< on raw scores
    double agg_threshold = 0.0;   ///< on aggregated interval scores
    double rb_precision = 0.0, rb_recall = 0.0, rb_f1 = 0.0;
    double pw_precision = 0.0, pw_recall = 0.0, pw_f1 = 0.0;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    RangeMetricConfig range_config;
    AggregationSpec aggregation;
    std::filesystem::path csv_path;
};

/// Range-based vs preceding-window metrics over the (window, alpha) grid,
/// written as compare.csv. Verifies on every window that the range labelling
/// and the partition's positive intervals select exactly the same samples,
/// and aborts on any mismatch.
CompareResult run_compare(const EvalConfig& config);
CompareResult run_compare(const EvalConfig& config, const ScoredSeries& series, const EventLog& events);

struct BenchConfig {
    std::vector<std::size_t> sizes{10'000, 100'000, 1'000'000}; ///< pw scaling sizes
    std::size_t cost_table_n = 100'000; ///< size at which both evaluators are timed
    std::size_t num_events = 20;
    std::vector<double> window_fractions{0.25, 0.5, 1.0}; ///< of the data's W_max
    std::vector<double> alphas{0.2, 0.5, 0.8};
    double duration = 100'000.0;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir; ///< empty: keep the report in memory only

    void validate() const;
};

struct BenchRow {
    std::string method; ///< "pwroc" or "rangebased"
    std::size_t n = 0;
    double window = 0.0;
    double alpha = 0.0; ///< not meaningful for pwroc rows (whole-curve evaluation)
    double seconds = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> cost_table; ///< both methods at cost_table_n
    std::vector<BenchRow> scaling;    ///< pw at each size, longest window
    double loglog_slope = 0.0;
    double speedup = 0.0; ///< min over alphas of rangebased/pwroc time at the longest window
    bool linear_ok = false;
    bool speedup_ok = false;
};

/// Wall-clock comparison of the two evaluators on synthetic data, plus the
/// pw scaling fit. Timing runs are serialized to avoid contention skew.
BenchReport run_bench(const BenchConfig& config);

} // namespace pwroc
