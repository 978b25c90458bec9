#include <CLI11.hpp>

#include <optional>
#include <string>

#include "adiosaa/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"adiosaa: sentence-level answer attribution pipeline"};
    app.require_subcommand(1);

    std::string source, raw_dir, dataset, out, config, predictions;
    std::string format = "table";
    int workers = 0;
    std::size_t limit = 0;

    auto* reformat = app.add_subcommand("reformat", "Reformat a raw corpus to canonical JSONL");
    reformat->add_option("--source", source, "Raw corpus kind: verifiability | hagrid")
        ->required();
    reformat->add_option("--raw-dir", raw_dir, "Directory holding the raw corpus files")
        ->required();
    reformat->add_option("--out", out, "Output canonical JSONL path")->required();

    auto* stats = app.add_subcommand("stats", "Dataset statistics for a canonical JSONL file");
    stats->add_option("--dataset", dataset, "Canonical JSONL path")->required();
    stats->add_option("--format", format, "Output format: table | json");

    auto* run = app.add_subcommand("run", "Attribute every record of a dataset");
    run->add_option("--config", config, "Pipeline config JSON path")->required();
    run->add_option("--dataset", dataset, "Canonical JSONL path")->required();
    run->add_option("--out", out, "Predictions JSONL output path")->required();
    run->add_option("--workers", workers, "Worker thread count (overrides config)");
    run->add_option("--limit", limit, "Prune limit override (requires prune in config)");

    auto* eval = app.add_subcommand("eval", "Score predictions against gold attributions");
    eval->add_option("--dataset", dataset, "Canonical JSONL path")->required();
    eval->add_option("--predictions", predictions, "Predictions JSONL path")->required();
    eval->add_option("--format", format, "Output format: table | json");

    auto* run_eval = app.add_subcommand("run-eval", "Run attribution, then score it");
    run_eval->add_option("--config", config, "Pipeline config JSON path")->required();
    run_eval->add_option("--dataset", dataset, "Canonical JSONL path")->required();
    run_eval->add_option("--out", out, "Predictions JSONL output path")->required();
    run_eval->add_option("--format", format, "Output format: table | json");
    run_eval->add_option("--workers", workers, "Worker thread count (overrides config)");
    run_eval->add_option("--limit", limit, "Prune limit override (requires prune in config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? adiosaa::kExitOk : adiosaa::kExitUsage;
    }

    std::optional<int> workers_opt;
    if (workers > 0) workers_opt = workers;
    std::optional<std::size_t> limit_opt;
    if (limit > 0) limit_opt = limit;

    if (reformat->parsed()) return adiosaa::cmd_reformat(source, raw_dir, out);
    if (stats->parsed()) return adiosaa::cmd_stats(dataset, format);
    if (run->parsed()) return adiosaa::cmd_run(config, dataset, out, workers_opt, limit_opt);
    if (eval->parsed()) return adiosaa::cmd_eval(dataset, predictions, format);
    if (run_eval->parsed()) {
        return adiosaa::cmd_run_eval(config, dataset, out, format, workers_opt, limit_opt);
    }
    return adiosaa::kExitUsage;
}
