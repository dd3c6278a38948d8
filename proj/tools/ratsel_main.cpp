// Command-line front end: run campaigns, then summarize and compare traces.

#include <CLI11.hpp>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ratsel/config.hpp"
#include "ratsel/errors.hpp"
#include "ratsel/experiment.hpp"
#include "ratsel/summary.hpp"
#include "ratsel/trace.hpp"

namespace {

struct RunOptions {
  std::string config;
  std::optional<std::size_t> epochs;
  std::optional<std::uint64_t> seed;
  std::string trace;
  std::string checkpoint;
};

struct TraceOptions {
  std::string trace;
  std::size_t interval = 500;
  std::string format = "csv";
  std::string out;
};

int run(const RunOptions& opt) {
  ratsel::ExperimentConfig cfg =
      opt.config.empty() ? ratsel::ExperimentConfig{} : ratsel::load_config(opt.config);
  if (opt.epochs) cfg.epochs = *opt.epochs;
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.trace.empty()) cfg.trace_path = opt.trace;
  cfg.validate();

  const ratsel::ExperimentResult result = ratsel::run_experiment(cfg);
  const auto rows = ratsel::summarize(result.trace, cfg.interval_width);
  if (!cfg.summary_path.empty()) {
    ratsel::export_summaries(rows, ratsel::ExportFormat::Csv, cfg.summary_path);
  }
  if (!opt.checkpoint.empty()) {
    std::ofstream out(opt.checkpoint);
    if (!out) {
      throw ratsel::IoError("cannot write checkpoint: " + opt.checkpoint);
    }
    result.agent.save_checkpoint(out);
  }
  std::cout << ratsel::format_comparison(rows);
  if (!cfg.trace_path.empty()) {
    std::cout << "trace: " << cfg.trace_path.string() << '\n';
  }
  return EXIT_SUCCESS;
}

std::vector<ratsel::EpochRecord> load_nonempty(const std::string& path) {
  auto trace = ratsel::read_trace(path);
  if (trace.empty()) {
    throw ratsel::ValidationError("trace is empty: " + path);
  }
  return trace;
}

int summarize(const TraceOptions& opt) {
  const auto trace = load_nonempty(opt.trace);
  const auto rows = ratsel::summarize(trace, opt.interval);
  const auto format = ratsel::parse_export_format(opt.format);
  if (opt.out.empty()) {
    std::cout << ratsel::format_summaries(rows, format);
  } else {
    ratsel::export_summaries(rows, format, opt.out);
  }
  return EXIT_SUCCESS;
}

int oracle_check(const TraceOptions& opt) {
  const auto trace = load_nonempty(opt.trace);
  std::cout << ratsel::format_agreement(ratsel::oracle_check(trace, opt.interval));
  return EXIT_SUCCESS;
}

int compare(const TraceOptions& opt) {
  const auto trace = load_nonempty(opt.trace);
  std::cout << ratsel::format_comparison(ratsel::summarize(trace, opt.interval));
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Access-network selection: DQN agent vs. MADM baselines"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Run a training/selection campaign");
  run_cmd->add_option("--config", run_opt.config, "Experiment config (JSON)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--epochs", run_opt.epochs, "Override epoch count")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run_opt.seed, "Override seed");
  run_cmd->add_option("--trace", run_opt.trace, "Trace output path (JSONL)");
  run_cmd->add_option("--checkpoint", run_opt.checkpoint, "Write the final agent checkpoint");

  TraceOptions sum_opt;
  auto* sum_cmd = app.add_subcommand("summarize", "Interval 5G-selection statistics");
  sum_cmd->add_option("--trace", sum_opt.trace, "Trace file")->required();
  sum_cmd->add_option("--interval", sum_opt.interval, "Interval width in epochs")
      ->check(CLI::PositiveNumber);
  sum_cmd->add_option("--format", sum_opt.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sum_cmd->add_option("--out", sum_opt.out, "Output path (default: stdout)");

  TraceOptions check_opt;
  auto* check_cmd = app.add_subcommand("oracle-check", "Agreement with the reward oracle");
  check_cmd->add_option("--trace", check_opt.trace, "Trace file")->required();
  check_cmd->add_option("--interval", check_opt.interval, "Interval width in epochs")
      ->check(CLI::PositiveNumber);

  TraceOptions cmp_opt;
  auto* cmp_cmd = app.add_subcommand("compare", "Print the per-interval 5G-selection matrix");
  cmp_cmd->add_option("--trace", cmp_opt.trace, "Trace file")->required();
  cmp_cmd->add_option("--interval", cmp_opt.interval, "Interval width in epochs")
      ->check(CLI::PositiveNumber);

  auto* cfg_cmd = app.add_subcommand("default-config", "Print the default config as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run_cmd) return run(run_opt);
    if (*sum_cmd) return summarize(sum_opt);
    if (*check_cmd) return oracle_check(check_opt);
    if (*cmp_cmd) return compare(cmp_opt);
    if (*cfg_cmd) {
      std::cout << ratsel::config_to_json(ratsel::ExperimentConfig{});
      return EXIT_SUCCESS;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
