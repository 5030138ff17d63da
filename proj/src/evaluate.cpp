#include "pwroc/evaluate.hpp"

#include "pwroc/synthetic.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace pwroc {

namespace {

double parse_double_token(std::string_view token, const char* what) {
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size()) {
        throw std::invalid_argument(std::string(what) + ": malformed number '" + std::string(token) + "'");
    }
    return value;
}

std::uint64_t parse_uint_token(std::string_view token, const char* what) {
    std::uint64_t value = 0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size()) {
        throw std::invalid_argument(std::string(what) + ": malformed integer '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const std::size_t pos = text.find(sep);
        if (pos == std::string_view::npos) {
            parts.push_back(text);
            return parts;
        }
        parts.push_back(text.substr(0, pos));
        text.remove_prefix(pos + 1);
    }
}

std::ofstream open_artifact(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

} // namespace

void EvalConfig::validate() const {
    aggregation.validate();
    for (double a : alphas) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw std::invalid_argument("alpha values must lie in [0, 1]");
        }
    }
    if (!(range_config.existence_weight >= 0.0 && range_config.existence_weight <= 1.0)) {
        throw std::invalid_argument("range existence weight must lie in [0, 1]");
    }
}

AggregationSpec parse_aggregation(std::string_view text) {
    AggregationSpec spec;
    const auto parts = split(text, ':');
    const std::string_view kind = parts[0];
    if (kind == "mean" && parts.size() == 1) {
        spec.kind = AggregationKind::mean;
    } else if (kind == "median" && parts.size() == 1) {
        spec.kind = AggregationKind::median;
    } else if (kind == "ccdf" && parts.size() == 2) {
        spec.kind = AggregationKind::ccdf;
        spec.ccdf_threshold = parse_double_token(parts[1], "ccdf threshold");
    } else if (kind == "nab" && parts.size() <= 2) {
        spec.kind = AggregationKind::nab;
        if (parts.size() == 2) {
            if (parts[1] != "norm") {
                throw std::invalid_argument("aggregation: expected nab or nab:norm, got '" + std::string(text) + "'");
            }
            spec.nab_normalized = true;
        }
    } else {
        throw std::invalid_argument("aggregation: expected mean | median | ccdf:<tau> | nab[:norm], got '" +
                                    std::string(text) + "'");
    }
    spec.validate();
    return spec;
}

FilterSpec parse_filter(std::string_view text) {
    FilterSpec spec;
    const auto parts = split(text, ':');
    const std::string_view kind = parts[0];
    if (kind == "none" && parts.size() == 1) {
        spec.kind = FilterKind::none;
    } else if (kind == "nontrigger" && (parts.size() == 2 || parts.size() == 3)) {
        spec.kind = FilterKind::non_trigger;
        spec.non_trigger_window = parse_double_token(parts[1], "nontrigger w2");
        if (parts.size() == 3) spec.threshold = parse_double_token(parts[2], "nontrigger threshold");
    } else if (kind == "counter" && (parts.size() == 3 || parts.size() == 4)) {
        spec.kind = FilterKind::counter;
        spec.counter_k = parse_uint_token(parts[1], "counter K");
        spec.counter_period = parse_double_token(parts[2], "counter period");
        if (parts.size() == 4) spec.threshold = parse_double_token(parts[3], "counter threshold");
    } else {
        throw std::invalid_argument("filter: expected none | nontrigger:<w2>[:<thr>] | counter:<K>:<period>[:<thr>], got '" +
                                    std::string(text) + "'");
    }
    spec.validate();
    return spec;
}

std::string to_string(const FilterSpec& spec) {
    switch (spec.kind) {
    case FilterKind::none:
        return "none";
    case FilterKind::non_trigger:
        return "nontrigger:" + format_double(spec.non_trigger_window) + ":" + format_double(spec.threshold);
    case FilterKind::counter:
        return "counter:" + std::to_string(spec.counter_k) + ":" + format_double(spec.counter_period) + ":" +
               format_double(spec.threshold);
    }
    return "none";
}

std::string to_string(const AggregationSpec& spec) {
    switch (spec.kind) {
    case AggregationKind::mean:
        return "mean";
    case AggregationKind::median:
        return "median";
    case AggregationKind::ccdf:
        return "ccdf:" + format_double(spec.ccdf_threshold);
    case AggregationKind::nab:
        return spec.nab_normalized ? "nab:norm" : "nab";
    }
    return "mean";
}

namespace {

std::string window_mode_name(WindowConfig::Mode mode) {
    switch (mode) {
    case WindowConfig::Mode::single:
        return "single";
    case WindowConfig::Mode::sweep:
        return "sweep";
    case WindowConfig::Mode::automatic:
        return "auto";
    }
    return "single";
}

void write_curve_csv(const std::filesystem::path& path, const RocCurve& curve) {
    auto out = open_artifact(path);
    out << "threshold,fpr,tpr\n";
    for (const RocPoint& p : curve.points) {
        out << format_double(p.threshold) << ',' << format_double(p.fpr) << ',' << format_double(p.tpr) << '\n';
    }
}

void write_surface_csv(const std::filesystem::path& path, const std::vector<WindowEvaluation>& evals) {
    auto out = open_artifact(path);
    out << "window,threshold,fpr,tpr\n";
    for (const WindowEvaluation& eval : evals) {
        if (!eval.curve) continue;
        for (const RocPoint& p : eval.curve->points) {
            out << format_double(eval.window) << ',' << format_double(p.threshold) << ',' << format_double(p.fpr)
                << ',' << format_double(p.tpr) << '\n';
        }
    }
}

void write_threshold_metrics_csv(const std::filesystem::path& path, const std::vector<WindowEvaluation>& evals,
                                 const std::vector<double>& alphas) {
    auto out = open_artifact(path);
    out << "window,alpha,threshold,tp,fp,tn,fn,precision,recall,f1\n";
    std::vector<double> values;
    for (const WindowEvaluation& eval : evals) {
        if (!eval.curve) continue; // degenerate windows are gaps, not rows
        values.clear();
        for (const AggregatedSample& s : eval.samples) values.push_back(s.value);
        for (double alpha : alphas) {
            const double c = label_threshold(values, alpha);
            const ThresholdMetrics m = threshold_metrics(eval.samples, c);
            out << format_double(eval.window) << ',' << format_double(alpha) << ',' << format_double(c) << ',' << m.tp
                << ',' << m.fp << ',' << m.tn << ',' << m.fn << ',' << format_double(m.precision) << ','
                << format_double(m.recall) << ',' << format_double(m.f1) << '\n';
        }
    }
}

void write_summary_json(const std::filesystem::path& path, const EvalConfig& config,
                        const std::vector<WindowEvaluation>& evals, double wmax, const std::string& window_note) {
    nlohmann::ordered_json summary;
    summary["config"] = {
        {"scores", config.scores_path.string()},
        {"events", config.events_path.string()},
        {"window_mode", window_mode_name(config.window.mode)},
        {"aggregation", to_string(config.aggregation)},
        {"filter", to_string(config.aggregation.filter)},
        {"alphas", config.alphas},
        {"seed", config.seed},
    };
    summary["wmax"] = wmax;
    if (!window_note.empty()) summary["window_note"] = window_note;
    // built as locals: ordered_json invalidates references on key insertion
    auto windows = nlohmann::ordered_json::array();
    auto gaps = nlohmann::ordered_json::array();
    for (const WindowEvaluation& eval : evals) {
        if (eval.curve) {
            windows.push_back({
                {"window", eval.window},
                {"auc", eval.curve->auc},
                {"positive_intervals", eval.counts.positive_intervals},
                {"negative_intervals", eval.counts.negative_intervals},
                {"covered_timestamps", eval.counts.covered_timestamps},
                {"excluded_timestamps", eval.counts.excluded_timestamps},
                {"positive_samples", eval.sample_positives},
                {"negative_samples", eval.sample_negatives},
            });
        } else {
            gaps.push_back({
                {"window", eval.window},
                {"positive_samples", eval.sample_positives},
                {"negative_samples", eval.sample_negatives},
            });
        }
    }
    summary["windows"] = std::move(windows);
    summary["gaps"] = std::move(gaps);
    auto out = open_artifact(path);
    out << summary.dump(2) << '\n';
}

} // namespace

EvalOutputs run_evaluate(const EvalConfig& config) {
    const ScoredSeries series = load_scores(config.scores_path);
    const EventLog events = load_events(config.events_path);
    return run_evaluate(config, series, events);
}

EvalOutputs run_evaluate(const EvalConfig& config, const ScoredSeries& series, const EventLog& events) {
    config.validate();

    EvalOutputs outputs;
    outputs.windows = config.window.resolve(events, series);
    const double wmax = compute_wmax(events, series);
    if (config.window.mode == WindowConfig::Mode::automatic) {
        outputs.window_note = "window auto: min(0.1 * span / num_events, wmax) = " +
                              format_double(outputs.windows.front()) +
                              " (rule-of-thumb default; review against domain knowledge)";
    }

    outputs.evaluations = evaluate_windows(series, events, outputs.windows, config.aggregation);

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        for (const WindowEvaluation& eval : outputs.evaluations) {
            if (!eval.curve) continue;
            const auto path = config.out_dir / ("curve_" + format_double(eval.window) + ".csv");
            write_curve_csv(path, *eval.curve);
            outputs.written.push_back(path);
        }
        const auto surface_path = config.out_dir / "surface.csv";
        write_surface_csv(surface_path, outputs.evaluations);
        outputs.written.push_back(surface_path);

        if (!config.alphas.empty()) {
            const auto metrics_path = config.out_dir / "threshold_metrics.csv";
            write_threshold_metrics_csv(metrics_path, outputs.evaluations, config.alphas);
            outputs.written.push_back(metrics_path);
        }

        const auto summary_path = config.out_dir / "summary.json";
        write_summary_json(summary_path, config, outputs.evaluations, wmax, outputs.window_note);
        outputs.written.push_back(summary_path);
    }
    return outputs;
}

namespace {

// The range labelling and the partition must select exactly the same
// positive samples: both implement the predicate 0 <= s_i - t_j < w.
void check_partition_range_consistency(const Partition& part, const LabeledRanges& real, const ScoredSeries& series,
                                       double w) {
    std::vector<std::uint8_t> from_partition(series.size(), 0);
    for (const IntervalInstance& interval : part.intervals) {
        if (interval.label != Label::positive) continue;
        for (std::size_t idx : interval.members) from_partition[idx] = 1;
    }
    std::vector<std::uint8_t> from_ranges(series.size(), 0);
    for (const IndexRange& r : real) {
        for (std::size_t pos = r.first; pos <= r.last; ++pos) from_ranges[pos] = 1;
    }
    for (std::size_t j = 0; j < series.size(); ++j) {
        if (from_partition[j] != from_ranges[j]) {
            throw std::logic_error("range labelling and partition positives disagree at sample " + std::to_string(j) +
                                   " for window " + format_double(w));
        }
    }
}

} // namespace

CompareResult run_compare(const EvalConfig& config) {
    const ScoredSeries series = load_scores(config.scores_path);
    const EventLog events = load_events(config.events_path);
    return run_compare(config, series, events);
}

CompareResult run_compare(const EvalConfig& config, const ScoredSeries& series, const EventLog& events) {
    config.validate();
    if (config.alphas.empty()) {
        throw std::invalid_argument("run_compare: at least one alpha required");
    }

    CompareResult result;
    result.range_config = config.range_config;
    result.aggregation = config.aggregation;

    const std::vector<double> windows = config.window.resolve(events, series);
    std::vector<double> agg_values;
    for (double w : windows) {
        const Partition part = partition(series, events, w);
        const LabeledRanges real = events_to_ranges(events, series, w);
        check_partition_range_consistency(part, real, series, w);

        const std::vector<AggregatedSample> samples = aggregate_partition(part, series, config.aggregation);
        agg_values.clear();
        for (const AggregatedSample& s : samples) agg_values.push_back(s.value);

        for (double alpha : config.alphas) {
            CompareRow row;
            row.window = w;
            row.alpha = alpha;

            row.label_threshold = label_threshold(series.scores(), alpha);
            const LabeledRanges predicted = labels_to_ranges(label_map(series.scores(), alpha));
            row.rb_recall = real.empty() ? 0.0 : range_recall(real, predicted, config.range_config);
            row.rb_precision = range_precision(real, predicted, config.range_config);
            row.rb_f1 = range_f1(row.rb_precision, row.rb_recall);

            row.agg_threshold = agg_values.empty() ? 0.0 : label_threshold(agg_values, alpha);
            if (!samples.empty()) {
                const ThresholdMetrics m = threshold_metrics(samples, row.agg_threshold);
                row.pw_precision = m.precision;
                row.pw_recall = m.recall;
                row.pw_f1 = m.f1;
            }
            result.rows.push_back(row);
        }
    }

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        result.csv_path = config.out_dir / "compare.csv";
        auto out = open_artifact(result.csv_path);
        out << "window,alpha,label_threshold,agg_threshold,"
               "rb_precision,rb_recall,rb_f1,pw_precision,pw_recall,pw_f1\n";
        for (const CompareRow& row : result.rows) {
            out << format_double(row.window) << ',' << format_double(row.alpha) << ','
                << format_double(row.label_threshold) << ',' << format_double(row.agg_threshold) << ','
                << format_double(row.rb_precision) << ',' << format_double(row.rb_recall) << ','
                << format_double(row.rb_f1) << ',' << format_double(row.pw_precision) << ','
                << format_double(row.pw_recall) << ',' << format_double(row.pw_f1) << '\n';
        }
    }
    return result;
}

void BenchConfig::validate() const {
    if (sizes.empty()) throw std::invalid_argument("bench: at least one size required");
    if (window_fractions.empty()) throw std::invalid_argument("bench: at least one window fraction required");
    if (alphas.empty()) throw std::invalid_argument("bench: at least one alpha required");
    for (double f : window_fractions) {
        if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("bench: window fractions must lie in (0, 1]");
    }
    if (!(duration > 0.0)) throw std::invalid_argument("bench: duration must be positive");
    if (num_events < 2) throw std::invalid_argument("bench: at least two events required");
}

namespace {

std::pair<ScoredSeries, EventLog> make_bench_data(const BenchConfig& config, std::size_t n) {
    SyntheticSpec spec;
    spec.duration = config.duration;
    spec.sample_interval = config.duration / static_cast<double>(n);
    spec.num_events = config.num_events;
    spec.detector = DetectorModel::random;
    spec.seed = config.seed;
    return generate_synthetic(spec);
}

template <class F>
double time_seconds(F&& fn) {
    using clock = std::chrono::steady_clock;
    const auto elapsed = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double>(b - a).count();
    };
    fn(); // warm caches and allocators
    std::vector<double> runs;
    double total = 0.0;
    while (true) {
        const auto t0 = clock::now();
        fn();
        const double dt = elapsed(t0, clock::now());
        runs.push_back(dt);
        total += dt;
        if (dt > 1.0) break; // one measurement of an expensive run is enough
        if (runs.size() >= 3 && (total >= 0.2 || runs.size() >= 15)) break;
    }
    std::sort(runs.begin(), runs.end());
    return runs[runs.size() / 2];
}

double fit_loglog_slope(const std::vector<std::pair<std::size_t, double>>& points) {
    double mx = 0.0, my = 0.0;
    for (const auto& [n, t] : points) {
        mx += std::log(static_cast<double>(n));
        my += std::log(t);
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double num = 0.0, den = 0.0;
    for (const auto& [n, t] : points) {
        const double dx = std::log(static_cast<double>(n)) - mx;
        num += dx * (std::log(t) - my);
        den += dx * dx;
    }
    return num / den;
}

} // namespace

BenchReport run_bench(const BenchConfig& config) {
    config.validate();
    BenchReport report;

    AggregationSpec mean_spec; // the comparison uses the plain mean

    // Cost table: both evaluators at cost_table_n, per (window, alpha).
    const auto [table_series, table_events] = make_bench_data(config, config.cost_table_n);
    const double wmax = compute_wmax(table_events, table_series);

    std::vector<double> windows;
    for (double f : config.window_fractions) windows.push_back(f * wmax);
    std::sort(windows.begin(), windows.end());
    const double longest = windows.back();

    double pw_longest = 0.0, rb_longest_min = std::numeric_limits<double>::infinity();
    for (double w : windows) {
        const double pw_seconds = time_seconds(
            [&]() { evaluate_window(table_series, table_events, w, mean_spec); });
        for (double alpha : config.alphas) {
            report.cost_table.push_back({"pwroc", config.cost_table_n, w, alpha, pw_seconds});
            const double rb_seconds = time_seconds([&]() {
                const LabeledRanges real = events_to_ranges(table_events, table_series, w);
                const LabeledRanges predicted = labels_to_ranges(label_map(table_series.scores(), alpha));
                const double recall = real.empty() ? 0.0 : range_recall(real, predicted, RangeMetricConfig{});
                const double precision = range_precision(real, predicted, RangeMetricConfig{});
                range_f1(precision, recall);
            });
            report.cost_table.push_back({"rangebased", config.cost_table_n, w, alpha, rb_seconds});
            if (w == longest) {
                pw_longest = pw_seconds;
                rb_longest_min = std::min(rb_longest_min, rb_seconds);
            }
        }
    }
    report.speedup = rb_longest_min / pw_longest;
    report.speedup_ok = report.speedup >= 10.0;

    // Scaling fit: pw pipeline at each size, longest window.
    std::vector<std::pair<std::size_t, double>> scaling_points;
    for (std::size_t n : config.sizes) {
        const auto [series, events] = make_bench_data(config, n);
        const double seconds = time_seconds([&]() { evaluate_window(series, events, longest, mean_spec); });
        report.scaling.push_back({"pwroc", n, longest, 0.0, seconds});
        scaling_points.emplace_back(n, seconds);
    }
    if (scaling_points.size() >= 2) {
        report.loglog_slope = fit_loglog_slope(scaling_points);
        report.linear_ok = std::abs(report.loglog_slope - 1.0) <= 0.3;
    }

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        auto csv = open_artifact(config.out_dir / "bench.csv");
        csv << "phase,method,n,window,alpha,seconds\n";
        for (const BenchRow& row : report.cost_table) {
            csv << "cost_table," << row.method << ',' << row.n << ',' << format_double(row.window) << ','
                << format_double(row.alpha) << ',' << format_double(row.seconds) << '\n';
        }
        for (const BenchRow& row : report.scaling) {
            csv << "scaling," << row.method << ',' << row.n << ',' << format_double(row.window) << ",,"
                << format_double(row.seconds) << '\n';
        }

        nlohmann::ordered_json summary;
        summary["cost_table_n"] = config.cost_table_n;
        summary["sizes"] = config.sizes;
        summary["loglog_slope"] = report.loglog_slope;
        summary["speedup_longest_window"] = report.speedup;
        summary["linear_ok"] = report.linear_ok;
        summary["speedup_ok"] = report.speedup_ok;
        auto json_out = open_artifact(config.out_dir / "bench_summary.json");
        json_out << summary.dump(2) << '\n';
    }
    return report;
}

} // namespace pwroc
