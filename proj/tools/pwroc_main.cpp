#include "pwroc/csv.hpp"
#include "pwroc/evaluate.hpp"
#include "pwroc/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

struct WindowFlags {
    std::string window; // number or "auto"
    double window_min = 0.0, window_max = 0.0, window_step = 0.0;

    pwroc::WindowConfig resolve() const {
        pwroc::WindowConfig cfg;
        if (window_min > 0.0 || window_max > 0.0 || window_step > 0.0) {
            if (!window.empty()) {
                throw CLI::ValidationError("--window cannot be combined with --window-min/max/step");
            }
            cfg.mode = pwroc::WindowConfig::Mode::sweep;
            cfg.sweep_min = window_min;
            cfg.sweep_max = window_max;
            cfg.sweep_step = window_step;
            return cfg;
        }
        if (window.empty()) {
            throw CLI::ValidationError("a window is required: --window W | --window auto | --window-min/max/step");
        }
        if (window == "auto") {
            cfg.mode = pwroc::WindowConfig::Mode::automatic;
            return cfg;
        }
        cfg.mode = pwroc::WindowConfig::Mode::single;
        try {
            cfg.length = std::stod(window);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--window expects a number or 'auto', got '" + window + "'");
        }
        return cfg;
    }
};

void add_common_flags(CLI::App* cmd, pwroc::EvalConfig& config, WindowFlags& wflags, std::string& agg,
                      std::string& filter) {
    cmd->add_option("--scores", config.scores_path, "scores CSV (timestamp,score)")->required();
    cmd->add_option("--events", config.events_path, "events CSV (timestamp)")->required();
    cmd->add_option("--window", wflags.window, "window length in seconds, or 'auto'");
    cmd->add_option("--window-min", wflags.window_min, "sweep start");
    cmd->add_option("--window-max", wflags.window_max, "sweep end");
    cmd->add_option("--window-step", wflags.window_step, "sweep step");
    cmd->add_option("--agg", agg, "mean | median | ccdf:<tau> | nab[:norm]")->capture_default_str();
    cmd->add_option("--filter", filter, "none | nontrigger:<w2>[:<thr>] | counter:<K>:<period>[:<thr>]")
        ->capture_default_str();
    cmd->add_option("--alpha", config.alphas, "label-mapping thresholds in [0,1]")->delimiter(',');
    cmd->add_option("--out", config.out_dir, "output directory")->required();
    cmd->add_option("--seed", config.seed, "seed echoed into artifacts")->capture_default_str();
}

void print_eval_report(const pwroc::EvalOutputs& outputs) {
    if (!outputs.window_note.empty()) {
        std::cout << outputs.window_note << "\n";
    }
    for (const pwroc::WindowEvaluation& eval : outputs.evaluations) {
        std::cout << "window " << pwroc::format_double(eval.window);
        if (eval.curve) {
            std::cout << ": auc " << pwroc::format_double(eval.curve->auc) << " (" << eval.sample_positives << "+/"
                      << eval.sample_negatives << "- intervals)\n";
        } else {
            std::cout << ": degenerate (" << eval.sample_positives << "+/" << eval.sample_negatives
                      << "- intervals), reported as gap\n";
        }
    }
    for (const auto& path : outputs.written) {
        std::cout << "wrote " << path.string() << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"preceding-window ROC evaluation toolkit for temporal anomaly detectors"};
    app.require_subcommand(1);

    pwroc::EvalConfig config;
    WindowFlags wflags;
    std::string agg = "mean";
    std::string filter = "none";

    auto* evaluate_cmd = app.add_subcommand("evaluate", "pw-ROC curves, AUC and metric tables for one window");
    add_common_flags(evaluate_cmd, config, wflags, agg, filter);

    auto* surface_cmd = app.add_subcommand("surface", "ROC surface over a window sweep");
    add_common_flags(surface_cmd, config, wflags, agg, filter);

    auto* compare_cmd = app.add_subcommand("compare", "range-based vs pw metrics at matched thresholds");
    add_common_flags(compare_cmd, config, wflags, agg, filter);
    compare_cmd->add_option("--range-alpha", config.range_config.existence_weight,
                            "existence weight of the range recall")
        ->capture_default_str();
    compare_cmd->add_flag("--cardinality", config.range_config.cardinality,
                          "penalize fragmented detections of one range");

    pwroc::SyntheticSpec synth;
    std::filesystem::path synth_out;
    std::string detector = "random";
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic scores/events pair");
    synth_cmd->add_option("--duration", synth.duration, "series length in seconds")->capture_default_str();
    synth_cmd->add_option("--interval", synth.sample_interval, "base sampling interval")->capture_default_str();
    synth_cmd->add_option("--jitter", synth.jitter, "sampling jitter fraction in [0,1)")->capture_default_str();
    synth_cmd->add_option("--events", synth.num_events, "number of events")->capture_default_str();
    synth_cmd->add_option("--detector", detector, "random | oracle | constant")->capture_default_str();
    synth_cmd->add_option("--lead", synth.lead, "oracle: elevated span before events")->capture_default_str();
    synth_cmd->add_option("--noise", synth.noise, "oracle: gaussian sigma")->capture_default_str();
    synth_cmd->add_flag("--invert", synth.invert, "oracle: swap high/low scores");
    synth_cmd->add_option("--constant", synth.constant_value, "constant detector value")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "generator seed")->capture_default_str();
    synth_cmd->add_option("--out", synth_out, "output directory")->required();

    pwroc::BenchConfig bench;
    auto* bench_cmd = app.add_subcommand("bench", "wall-clock cost comparison and scaling fit");
    bench_cmd->add_option("--sizes", bench.sizes, "series sizes for the scaling fit")->delimiter(',');
    bench_cmd->add_option("--cost-table-n", bench.cost_table_n, "size at which both evaluators run")
        ->capture_default_str();
    bench_cmd->add_option("--events", bench.num_events, "number of events")->capture_default_str();
    bench_cmd->add_option("--window-fractions", bench.window_fractions, "windows as fractions of wmax")
        ->delimiter(',');
    bench_cmd->add_option("--alpha", bench.alphas, "label thresholds for the range-based side")->delimiter(',');
    bench_cmd->add_option("--duration", bench.duration, "synthetic duration in seconds")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "generator seed")->capture_default_str();
    bench_cmd->add_option("--out", bench.out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and friends
        }
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return e.get_exit_code();
    }

    try {
        if (*synth_cmd) {
            if (detector == "random") {
                synth.detector = pwroc::DetectorModel::random;
            } else if (detector == "oracle") {
                synth.detector = pwroc::DetectorModel::oracle;
            } else if (detector == "constant") {
                synth.detector = pwroc::DetectorModel::constant;
            } else {
                throw std::invalid_argument("--detector expects random | oracle | constant, got '" + detector + "'");
            }
            const auto [series, events] = pwroc::generate_synthetic(synth);
            std::filesystem::create_directories(synth_out);
            pwroc::write_scores_csv(synth_out / "scores.csv", series);
            pwroc::write_events_csv(synth_out / "events.csv", events);
            std::cout << "wrote " << (synth_out / "scores.csv").string() << " (" << series.size() << " samples)\n";
            std::cout << "wrote " << (synth_out / "events.csv").string() << " (" << events.size() << " events)\n";
            return 0;
        }
        if (*bench_cmd) {
            const pwroc::BenchReport report = pwroc::run_bench(bench);
            for (const pwroc::BenchRow& row : report.cost_table) {
                std::cout << row.method << " n=" << row.n << " w=" << pwroc::format_double(row.window)
                          << " alpha=" << pwroc::format_double(row.alpha) << ": " << pwroc::format_double(row.seconds)
                          << " s\n";
            }
            for (const pwroc::BenchRow& row : report.scaling) {
                std::cout << "scaling " << row.method << " n=" << row.n << ": " << pwroc::format_double(row.seconds)
                          << " s\n";
            }
            std::cout << "loglog slope: " << pwroc::format_double(report.loglog_slope)
                      << (report.linear_ok ? " (linear ok)" : " (NOT linear)") << "\n";
            std::cout << "speedup at longest window: " << pwroc::format_double(report.speedup) << "x"
                      << (report.speedup_ok ? " (>= 10x ok)" : " (BELOW 10x)") << "\n";
            if (!report.linear_ok || !report.speedup_ok) {
                std::cerr << nlohmann::json{{"error", "bench assertions failed"},
                                            {"loglog_slope", report.loglog_slope},
                                            {"speedup", report.speedup}}
                                 .dump()
                          << "\n";
                return 2;
            }
            return 0;
        }

        config.window = wflags.resolve();
        config.aggregation = pwroc::parse_aggregation(agg);
        config.aggregation.filter = pwroc::parse_filter(filter);

        if (*compare_cmd) {
            if (config.alphas.empty()) config.alphas = {0.2, 0.5, 0.8};
            const pwroc::CompareResult result = pwroc::run_compare(config);
            std::cout << "range config: existence_weight=" << pwroc::format_double(result.range_config.existence_weight)
                      << " cardinality=" << (result.range_config.cardinality ? "on" : "off") << " bias=flat\n";
            std::cout << "aggregation: " << pwroc::to_string(result.aggregation) << "\n";
            std::cout << "wrote " << result.csv_path.string() << " (" << result.rows.size() << " rows)\n";
            return 0;
        }
        // evaluate and surface share the pipeline; they differ in window spec shape
        const pwroc::EvalOutputs outputs = pwroc::run_evaluate(config);
        print_eval_report(outputs);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
