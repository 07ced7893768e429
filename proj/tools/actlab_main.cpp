// actlab: command-line front end for single runs, seeded sweep plans,
// summaries, cell comparisons and SVG figures.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 runtime failure.

#include "actlab/csv.hpp"
#include "actlab/plan.hpp"
#include "actlab/runner.hpp"
#include "actlab/simulation.hpp"
#include "actlab/summary.hpp"
#include "actlab/svg.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace actlab;

std::vector<std::string> split_commas(const std::string& value) {
    std::vector<std::string> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct RunOptions {
    std::string model;
    std::string regime = "uniform";
    std::string mode = "by_agent";
    std::string rule_order = "fixed";
    bool by_rule_reuse_step_order = false;
    std::string conflict_policy = "random_winner";
    double exponential_rate = 1.0;
    std::uint64_t seed = 0;
    int horizon = 1000;
    std::string sample_at; // comma list; defaults to the horizon
    std::map<std::string, std::string> model_fields;
    std::string out_path;
};

int cmd_run(const RunOptions& opt) {
    RunDescriptor desc;
    desc.setup.kind = parse_model_kind(opt.model);
    if (auto it = opt.model_fields.find("setting"); it != opt.model_fields.end()) {
        apply_model_field(desc.setup, "setting", it->second);
    }
    for (const auto& [field, value] : opt.model_fields) {
        if (field != "setting") apply_model_field(desc.setup, field, value);
    }
    desc.regime.kind = parse_regime_kind(opt.regime);
    desc.regime.conflict_policy = parse_conflict_policy(opt.conflict_policy);
    desc.regime.exponential_rate = opt.exponential_rate;
    desc.mode.mode = parse_activation_mode(opt.mode);
    desc.mode.rule_order = parse_rule_order(opt.rule_order);
    desc.mode.by_rule_reuse_step_order = opt.by_rule_reuse_step_order;
    desc.master_seed = opt.seed;
    desc.run_index = 0;
    desc.seed_index = 0;
    desc.horizon = opt.horizon;
    if (opt.horizon < 1) throw ConfigError("horizon must be >= 1");
    if (opt.sample_at.empty()) {
        desc.sample_at = {opt.horizon};
    } else {
        for (const auto& item : split_commas(opt.sample_at)) {
            int t = 0;
            std::istringstream in(item);
            if (!(in >> t) || !in.eof()) throw ConfigError("sample_at: bad step '" + item + "'");
            if (t < 0 || t > opt.horizon) {
                throw ConfigError("sample_at: step " + item + " outside [0, horizon]");
            }
            desc.sample_at.push_back(t);
        }
    }

    const RunRecord record = run_single(desc);
    if (record.failed()) throw ContractViolation("run failed: " + record.error);

    std::cout << "sample_t,metric,value\n";
    for (const auto& sample : record.samples) {
        std::cout << sample.sample_t << ',' << sample.metric << ',' << format_double(sample.value)
                  << '\n';
    }
    if (!opt.out_path.empty()) {
        const RunRecord records[] = {record};
        const auto rows = to_record_rows(records);
        write_records_csv_file(opt.out_path, rows);
    }
    return 0;
}

struct SweepOptions {
    std::string plan_path;
    std::string out_dir = ".";
    int parallelism = 1;
};

int cmd_sweep(const SweepOptions& opt) {
    const ExperimentPlan plan = read_plan(opt.plan_path);
    std::filesystem::create_directories(opt.out_dir);

    const auto descriptors = expand_plan(plan);
    const std::size_t total = descriptors.size();
    const std::size_t stride = std::max<std::size_t>(1, total / 20);
    auto progress = [&](std::size_t done, std::size_t all) {
        if (done % stride == 0 || done == all) {
            std::cerr << "progress: " << done << '/' << all << " runs\n";
        }
    };
    const auto records = execute_runs(descriptors, opt.parallelism, progress);

    const auto rows = to_record_rows(records);
    const auto records_path = (std::filesystem::path(opt.out_dir) / "records.csv").string();
    write_records_csv_file(records_path, rows);

    const auto summary = summarize_records(rows);
    const auto summary_path = (std::filesystem::path(opt.out_dir) / "summary.csv").string();
    write_summary_csv_file(summary_path, summary);

    std::size_t failures = 0;
    for (const auto& record : records) {
        if (record.failed()) ++failures;
    }
    if (failures > 0) {
        const auto failures_path = (std::filesystem::path(opt.out_dir) / "failures.csv").string();
        std::ofstream out(failures_path, std::ios::binary);
        if (!out) throw ConfigError("cannot open '" + failures_path + "' for writing");
        write_failures_csv(out, records);
        std::cerr << failures << " run(s) failed; see " << failures_path << '\n';
    }
    std::cerr << "wrote " << records_path << " and " << summary_path << '\n';
    return 0;
}

int cmd_summarize(const std::string& records_path, std::optional<int> sample_t,
                  const std::string& out_path) {
    const auto rows = read_records_csv_file(records_path);
    const auto summary = summarize_records(rows, sample_t);
    if (out_path.empty()) {
        write_summary_csv(std::cout, summary);
    } else {
        write_summary_csv_file(out_path, summary);
    }
    return 0;
}

int cmd_compare(const std::string& records_path, const std::string& a, const std::string& b,
                const std::string& metric, std::optional<int> sample_t) {
    const auto rows = read_records_csv_file(records_path);
    const auto result =
        compare_cells(rows, CellSelector::parse(a), CellSelector::parse(b), metric, sample_t);
    std::cout << "cell_a: " << result.cell_a << '\n'
              << "cell_b: " << result.cell_b << '\n'
              << "metric: " << result.metric << '\n'
              << "sample_t: " << result.sample_t << '\n'
              << "n_a: " << result.n_a << '\n'
              << "n_b: " << result.n_b << '\n'
              << "mean_a: " << format_double(result.mean_a) << '\n'
              << "mean_b: " << format_double(result.mean_b) << '\n'
              << "mean_diff: " << format_double(result.welch.mean_difference) << '\n'
              << "t_statistic: " << format_double(result.welch.statistic) << '\n'
              << "df: " << format_double(result.welch.degrees_of_freedom) << '\n'
              << "p_value: " << format_double(result.welch.p_value) << '\n';
    return 0;
}

int cmd_plot(const std::string& summary_path, const std::string& kind, const std::string& metrics,
             const std::string& out_path) {
    const auto summary = read_summary_csv_file(summary_path);
    FigureSpec spec;
    spec.kind = parse_figure_kind(kind);
    spec.metrics = split_commas(metrics);
    write_figure_file(out_path, summary, spec);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"actlab: agent activation-regime laboratory"};
    app.require_subcommand(1);

    std::string format = "csv";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));

    // run
    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "execute a single model run and print sampled metrics");
    run->add_option("--model", run_opt.model, "model: schelling, dpd, spatialpd")->required();
    run->add_option("--regime", run_opt.regime, "activation regime");
    run->add_option("--mode", run_opt.mode, "activation mode: by_agent, by_rule");
    run->add_option("--rule_order", run_opt.rule_order, "fixed or shuffled_per_step");
    run->add_flag("--by_rule_reuse_step_order", run_opt.by_rule_reuse_step_order,
                  "reuse one ordering for every rule phase");
    run->add_option("--conflict_policy", run_opt.conflict_policy, "random_winner or all_lose");
    run->add_option("--exponential_rate", run_opt.exponential_rate,
                    "activations per agent per step (exponential regime)");
    run->add_option("--seed", run_opt.seed, "master seed");
    run->add_option("--horizon", run_opt.horizon, "steps to simulate");
    run->add_option("--sample_at", run_opt.sample_at, "comma-separated sample steps");
    run->add_option("--out", run_opt.out_path, "also write a records.csv for this run");
    // Model fields mirror the plan-file vocabulary one to one.
    std::map<std::string, std::string> field_values;
    std::set<std::string> all_fields;
    for (auto kind : {ModelKind::Schelling, ModelKind::Dpd, ModelKind::SpatialPd}) {
        for (const auto& field : model_field_names(kind)) all_fields.insert(field);
    }
    for (const auto& field : all_fields) {
        run->add_option("--" + field, field_values[field], "model field");
    }

    // sweep
    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "execute a plan file and write records/summary CSVs");
    sweep->add_option("--plan", sweep_opt.plan_path, "plan file path")->required();
    sweep->add_option("--out", sweep_opt.out_dir, "output directory");
    sweep->add_option("--parallelism", sweep_opt.parallelism, "worker threads");

    // summarize
    std::string sum_records, sum_out;
    int sum_sample_t = -1;
    auto* summarize = app.add_subcommand("summarize", "grouped means over seeds from a records CSV");
    summarize->add_option("--records", sum_records, "records.csv path")->required();
    summarize->add_option("--sample_t", sum_sample_t, "sample time (default: final)");
    summarize->add_option("--out", sum_out, "output path (default: stdout)");

    // compare
    std::string cmp_records, cmp_a, cmp_b, cmp_metric;
    int cmp_sample_t = -1;
    auto* compare = app.add_subcommand("compare", "Welch t-test between two cells");
    compare->add_option("--records", cmp_records, "records.csv path")->required();
    compare->add_option("--a", cmp_a, "cell A selector, e.g. regime=uniform,mode=by_agent")
        ->required();
    compare->add_option("--b", cmp_b, "cell B selector")->required();
    compare->add_option("--metric", cmp_metric, "metric name")->required();
    compare->add_option("--sample_t", cmp_sample_t, "sample time (default: final)");

    // plot
    std::string plot_summary, plot_kind = "line", plot_metrics, plot_out;
    auto* plot = app.add_subcommand("plot", "emit an SVG figure from a summary CSV");
    plot->add_option("--summary", plot_summary, "summary.csv path")->required();
    plot->add_option("--kind", plot_kind, "line or grouped-bar");
    plot->add_option("--metric", plot_metrics, "metric (comma list for grouped-bar)")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (run->parsed()) {
            for (const auto& [field, value] : field_values) {
                if (!value.empty()) run_opt.model_fields[field] = value;
            }
            return cmd_run(run_opt);
        }
        if (sweep->parsed()) return cmd_sweep(sweep_opt);
        if (summarize->parsed()) {
            return cmd_summarize(sum_records,
                                 sum_sample_t >= 0 ? std::optional<int>(sum_sample_t) : std::nullopt,
                                 sum_out);
        }
        if (compare->parsed()) {
            return cmd_compare(cmp_records, cmp_a, cmp_b, cmp_metric,
                               cmp_sample_t >= 0 ? std::optional<int>(cmp_sample_t) : std::nullopt);
        }
        if (plot->parsed()) return cmd_plot(plot_summary, plot_kind, plot_metrics, plot_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
