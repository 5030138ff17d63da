// Acceptance suite: structural, statistical and cost assertions over the
// whole toolkit. Each criterion prints one [PASS]/[FAIL] line; the process
// exit code is the number of failed criteria.

#include "pwroc/evaluate.hpp"
#include "pwroc/nab.hpp"
#include "pwroc/synthetic.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pwroc;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), "cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t end = line.find(',', start);
            if (end == std::string::npos) end = line.size();
            row.push_back(std::strtod(line.substr(start, end - start).c_str(), nullptr));
            start = end + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- criterion 1: partition algebra --------------------------------------

void criterion_partition_algebra() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int iteration = 0; iteration < 1000; ++iteration) {
        const std::size_t max_points = iteration % 10 == 0 ? 10'000 : 600;
        const auto [series, events] = testing::random_case(rng, max_points, 20);
        const double wmax = compute_wmax(events, series);
        // keep the tile count tractable while still sampling the whole range
        const double w = wmax * std::max(u01(rng), 1e-3);
        const Partition part = partition(series, events, w);
        testing::check_partition_algebra(part, series, events, w);
    }
    // a few tiny-window cases on short series to cover the extreme regime
    for (int iteration = 0; iteration < 20; ++iteration) {
        const auto [series, events] = testing::random_case(rng, 60, 3);
        const double w = compute_wmax(events, series) * 1e-6;
        const Partition part = partition(series, events, w);
        testing::check_partition_algebra(part, series, events, w);
    }
}

// ---- criterion 2: roc oracle equivalence ----------------------------------

double mann_whitney(const std::vector<AggregatedSample>& samples) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (const auto& p : samples) {
        if (p.label != Label::positive) continue;
        for (const auto& n : samples) {
            if (n.label != Label::negative) continue;
            ++pairs;
            if (p.value > n.value) wins += 1.0;
            else if (p.value == n.value) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

void criterion_roc_oracle() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int iteration = 0; iteration < 500; ++iteration) {
        std::uniform_int_distribution<std::size_t> nd(1, 250);
        const std::size_t pos = nd(rng), neg = nd(rng);
        std::uniform_int_distribution<int> grid(0, 20);
        const bool ties = iteration % 2 == 0;
        std::vector<AggregatedSample> samples;
        for (std::size_t i = 0; i < pos + neg; ++i) {
            const double value = ties ? grid(rng) / 20.0 : u01(rng);
            samples.push_back({value, i < pos ? Label::positive : Label::negative, 0, 0});
        }
        const RocCurve curve = roc_curve(samples, 1.0);
        const double oracle = mann_whitney(samples);
        require(std::abs(curve.auc - oracle) <= 1e-12, "trapezoid auc deviates from the pairwise oracle");
        require(std::abs(auc(curve) - oracle) <= 1e-12, "point-recomputed auc deviates from the oracle");
        require(curve.points.front().fpr == 0.0 && curve.points.front().tpr == 0.0, "curve must start at (0,0)");
        require(curve.points.back().fpr == 1.0 && curve.points.back().tpr == 1.0, "curve must end at (1,1)");
    }
}

// ---- criterion 3: degenerate detectors ------------------------------------

void criterion_degenerate_detectors() {
    SyntheticSpec spec;
    spec.duration = 10'000;
    spec.sample_interval = 1.0;
    spec.num_events = 10;
    spec.detector = DetectorModel::oracle;
    spec.lead = 100.0;
    spec.seed = 7;

    const auto [series, events] = generate_synthetic(spec);
    const auto perfect = evaluate_window(series, events, spec.lead, AggregationSpec{});
    require(perfect.curve.has_value(), "oracle detector lost a class");
    require(perfect.curve->auc == 1.0, "oracle detector must reach auc exactly 1");

    SyntheticSpec inverted = spec;
    inverted.invert = true;
    const auto [inv_series, inv_events] = generate_synthetic(inverted);
    const auto worst = evaluate_window(inv_series, inv_events, spec.lead, AggregationSpec{});
    require(worst.curve.has_value(), "inverted oracle lost a class");
    require(worst.curve->auc == 0.0, "inverted oracle must reach auc exactly 0");

    SyntheticSpec random_spec;
    random_spec.duration = 10'000;
    random_spec.sample_interval = 1.0;
    random_spec.num_events = 100;
    random_spec.detector = DetectorModel::random;
    random_spec.seed = 42;
    const auto [rand_series, rand_events] = generate_synthetic(random_spec);
    const std::vector<double> sweep{10, 20, 30, 40, 50};
    const RocSurface surface = roc_surface(rand_series, rand_events, sweep, AggregationSpec{});
    for (const auto& curve : surface.curves) {
        require(curve.has_value(), "random sweep hit a degenerate window");
        require(curve->auc >= 0.4 && curve->auc <= 0.6,
                "random detector auc " + format_double(curve->auc) + " outside [0.4, 0.6]");
    }
}

// ---- criterion 4: weight anchors -------------------------------------------

void criterion_weight_anchors() {
    require(nab_weight(0.0, 3.0) == 0.0, "sigma_w(0) must be exactly 0");
    const double at_window = nab_weight(-3.0, 3.0);
    require(at_window >= 0.999999 && at_window < 1.0, "sigma_w(-w) outside [0.999999, 1)");
    require(sigma_a(0.0) == 0.0, "sigma_a(0) must be exactly 0 with default weights");

    double previous = 2.0;
    for (int i = 0; i <= 1000; ++i) {
        const double w = 5.0;
        const double t = -w + 2.0 * w * static_cast<double>(i) / 1000.0;
        const double value = nab_weight(t, w);
        require(value < previous, "sigma_w not strictly decreasing on the grid");
        previous = value;
    }
}

// ---- criterion 5: monotone coverage ----------------------------------------

void criterion_monotone_coverage() {
    std::mt19937_64 rng(505);
    for (int iteration = 0; iteration < 300; ++iteration) {
        const auto [series, events] = testing::random_case(rng, 500, 10);
        const double wmax = compute_wmax(events, series);
        std::size_t previous = std::numeric_limits<std::size_t>::max();
        for (double fraction : {0.05, 0.2, 0.4, 0.6, 0.8, 1.0}) {
            const Partition part = partition(series, events, fraction * wmax);
            std::size_t negatives = 0;
            for (const auto& interval : part.intervals) {
                if (interval.label == Label::negative) negatives += interval.members.size();
            }
            require(negatives <= previous, "negative coverage increased with the window length");
            previous = negatives;
        }
    }
}

// ---- criterion 6: range-based cross-checks ---------------------------------

void criterion_range_cross_checks() {
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (int iteration = 0; iteration < 200; ++iteration) {
        std::uniform_int_distribution<std::size_t> nd(5, 200);
        const std::size_t n = nd(rng);
        std::vector<std::uint8_t> real_labels(n), predicted_labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            real_labels[i] = u01(rng) < 0.3 ? 1 : 0;
            predicted_labels[i] = u01(rng) < 0.3 ? 1 : 0;
        }
        const LabeledRanges real = labels_to_ranges(real_labels);
        const LabeledRanges predicted = labels_to_ranges(predicted_labels);
        if (real.empty()) continue;

        // alpha = 1: the formula collapses to the existence rate
        RangeMetricConfig cfg;
        cfg.existence_weight = 1.0;
        double hits = 0.0;
        for (const auto& r : real) hits += existence(r, predicted);
        require(range_recall(real, predicted, cfg) == hits / static_cast<double>(real.size()),
                "alpha = 1 recall must equal the existence rate");

        // perfect prediction
        cfg.existence_weight = u01(rng);
        require(range_recall(real, real, cfg) == 1.0, "perfect prediction recall must be 1");
        require(range_precision(real, real, cfg) == 1.0, "perfect prediction precision must be 1");
        require(range_f1(1.0, 1.0) == 1.0, "perfect prediction f1 must be 1");
    }

    // frozen golden comparison, hand-computed for the ten-point scenario
    EvalConfig config;
    config.window.mode = WindowConfig::Mode::single;
    config.window.length = 2.0;
    config.alphas = {0.2, 0.5, 0.8};
    config.range_config.existence_weight = 0.5;
    config.out_dir = fresh_dir("pwroc_acc_golden");
    const ScoredSeries series({1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                              {0.05, 0.10, 0.20, 0.30, 0.40, 0.52, 0.60, 0.70, 0.80, 0.90});
    const EventLog events({5, 10});
    run_compare(config, series, events);

    const auto rows = read_csv_rows(config.out_dir / "compare.csv");
    require(rows.size() == 3, "golden compare.csv must hold three rows");
    const std::vector<std::vector<double>> expected = {
        {2, 0.2, 0.229, 0.314, 4.0 / 7.0, 1.0, 8.0 / 11.0, 0.5, 1.0, 2.0 / 3.0},
        {2, 0.5, 0.46375, 0.5, 0.4, 0.5, 4.0 / 9.0, 1.0 / 3.0, 0.5, 0.4},
        {2, 0.8, 0.6985, 0.686, 2.0 / 3.0, 0.5, 4.0 / 7.0, 1.0, 0.5, 2.0 / 3.0},
    };
    for (std::size_t r = 0; r < expected.size(); ++r) {
        require(rows[r].size() == expected[r].size(), "golden row width mismatch");
        for (std::size_t c = 0; c < expected[r].size(); ++c) {
            require(std::abs(rows[r][c] - expected[r][c]) <= 1e-12,
                    "golden value row " + std::to_string(r) + " col " + std::to_string(c) + " off: got " +
                        format_double(rows[r][c]) + ", want " + format_double(expected[r][c]));
        }
    }
}

// ---- criterion 7: cost comparison ------------------------------------------

void criterion_cost_comparison(std::string& detail) {
    BenchConfig config;
    config.sizes = {10'000, 100'000, 1'000'000};
    config.cost_table_n = 100'000;
    config.num_events = 20;
    config.duration = 100'000.0;
    config.window_fractions = {0.25, 0.5, 1.0};
    config.alphas = {0.2, 0.5, 0.8};
    config.seed = 11;

    const BenchReport report = run_bench(config);
    std::ostringstream summary;
    summary << "slope " << report.loglog_slope << ", speedup " << report.speedup << "x";
    detail = summary.str();
    require(report.speedup >= 10.0, "pw-ROC must be at least 10x faster, got " + format_double(report.speedup));
    require(std::abs(report.loglog_slope - 1.0) <= 0.3,
            "pw-ROC scaling slope " + format_double(report.loglog_slope) + " outside 1.0 +- 0.3");
}

// ---- criterion 8: determinism and round trip -------------------------------

void criterion_determinism_round_trip() {
    SyntheticSpec spec;
    spec.duration = 5000;
    spec.sample_interval = 1.0;
    spec.jitter = 0.35;
    spec.num_events = 8;
    spec.detector = DetectorModel::random;
    spec.seed = 88;
    const auto [series, events] = generate_synthetic(spec);

    EvalConfig config;
    config.window.mode = WindowConfig::Mode::sweep;
    config.window.sweep_min = 60;
    config.window.sweep_max = 540;
    config.window.sweep_step = 60;
    config.alphas = {0.2, 0.5, 0.8};

    config.out_dir = fresh_dir("pwroc_acc_det_a");
    const auto first = run_evaluate(config, series, events);
    const auto second_dir = fresh_dir("pwroc_acc_det_b");
    config.out_dir = second_dir;
    const auto second = run_evaluate(config, series, events);
    require(first.written.size() == second.written.size(), "artifact lists differ between runs");
    for (std::size_t i = 0; i < first.written.size(); ++i) {
        require(read_file(first.written[i]) == read_file(second.written[i]),
                "artifact " + first.written[i].filename().string() + " not byte-identical");
    }

    // recompute every auc from the emitted surface
    std::map<double, std::vector<RocPoint>> per_window;
    for (const auto& row : read_csv_rows(second_dir / "surface.csv")) {
        per_window[row[0]].push_back({row[1], row[2], row[3]});
    }
    for (const auto& eval : second.evaluations) {
        if (!eval.curve) continue;
        const double recomputed = trapezoid_auc(per_window.at(eval.window));
        require(std::abs(recomputed - eval.curve->auc) <= 1e-9,
                "surface round trip auc off by " + format_double(recomputed - eval.curve->auc));
    }
}

// ---- criterion 9: score-scale invariance -----------------------------------

void criterion_scale_invariance() {
    std::mt19937_64 rng(909);

    // sample-level: cubing grid values preserves every tie group exactly
    for (int iteration = 0; iteration < 100; ++iteration) {
        std::uniform_int_distribution<std::size_t> nd(1, 120);
        std::uniform_int_distribution<int> grid(1, 64);
        const std::size_t pos = nd(rng), neg = nd(rng);
        std::vector<AggregatedSample> samples;
        for (std::size_t i = 0; i < pos + neg; ++i) {
            samples.push_back({grid(rng) / 64.0, i < pos ? Label::positive : Label::negative, 0, 0});
        }
        const RocCurve base = roc_curve(samples, 1.0);
        auto cubed = samples;
        for (auto& s : cubed) s.value = s.value * s.value * s.value;
        const RocCurve transformed = roc_curve(cubed, 1.0);
        require(base.points.size() == transformed.points.size(), "transformed curve changed its point count");
        for (std::size_t i = 0; i < base.points.size(); ++i) {
            require(base.points[i].fpr == transformed.points[i].fpr &&
                        base.points[i].tpr == transformed.points[i].tpr,
                    "transformed curve moved a point");
        }
        require(base.auc == transformed.auc, "transformed curve changed the auc");
    }

    // pipeline-level with the median aggregator (an order statistic, so the
    // transform commutes with the aggregation)
    SyntheticSpec spec;
    spec.duration = 4000;
    spec.sample_interval = 1.0;
    spec.num_events = 10;
    spec.detector = DetectorModel::random;
    spec.seed = 31;
    const auto [series, events] = generate_synthetic(spec);
    std::vector<double> cubed_scores = series.scores();
    for (double& s : cubed_scores) s = s * s * s;
    const ScoredSeries cubed(series.timestamps(), cubed_scores);

    AggregationSpec median_spec;
    median_spec.kind = AggregationKind::median;
    for (double w : {40.0, 120.0, 300.0}) {
        const auto base = evaluate_window(series, events, w, median_spec);
        const auto transformed = evaluate_window(cubed, events, w, median_spec);
        require(base.curve.has_value() && transformed.curve.has_value(), "pipeline lost a class");
        require(base.curve->points.size() == transformed.curve->points.size(),
                "pipeline transformed curve changed its point count");
        for (std::size_t i = 0; i < base.curve->points.size(); ++i) {
            require(base.curve->points[i].fpr == transformed.curve->points[i].fpr &&
                        base.curve->points[i].tpr == transformed.curve->points[i].tpr,
                    "pipeline transformed curve moved a point");
        }
        require(base.curve->auc == transformed.curve->auc, "pipeline transformed curve changed the auc");
    }
}

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<void(std::string&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "partition-algebra", 30.0, [](std::string&) { criterion_partition_algebra(); }},
        {2, "roc-oracle-equivalence", 0.0, [](std::string&) { criterion_roc_oracle(); }},
        {3, "degenerate-detectors", 0.0, [](std::string&) { criterion_degenerate_detectors(); }},
        {4, "weight-anchors", 0.0, [](std::string&) { criterion_weight_anchors(); }},
        {5, "monotone-coverage", 0.0, [](std::string&) { criterion_monotone_coverage(); }},
        {6, "range-cross-checks", 0.0, [](std::string&) { criterion_range_cross_checks(); }},
        {7, "cost-comparison", 300.0, [](std::string& detail) { criterion_cost_comparison(detail); }},
        {8, "determinism-round-trip", 0.0, [](std::string&) { criterion_determinism_round_trip(); }},
        {9, "score-scale-invariance", 0.0, [](std::string&) { criterion_scale_invariance(); }},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        std::string error;
        try {
            criterion.run(detail);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
            error = "exceeded the " + format_double(criterion.budget_seconds) + " s budget";
        }
        if (error.empty()) {
            std::printf("[PASS] %d. %s (%.2f s)%s%s\n", criterion.id, criterion.name.c_str(), elapsed,
                        detail.empty() ? "" : " — ", detail.c_str());
        } else {
            ++failures;
            std::printf("[FAIL] %d. %s (%.2f s): %s\n", criterion.id, criterion.name.c_str(), elapsed, error.c_str());
        }
        std::fflush(stdout);
    }
    return failures;
}
