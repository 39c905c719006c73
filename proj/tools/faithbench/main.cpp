#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faithbench/commands.hpp"
#include "faithbench/errors.hpp"

int main(int argc, char** argv) {
  using namespace faithbench;
  using namespace faithbench::cli;

  CLI::App app{"Reasoning-faithfulness evaluation harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string backend_override;
  std::string out_path;
  std::string records_path;
  std::vector<std::string> report_inputs;
  std::string report_out = "report";
  std::int64_t seed = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Declarative run configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--backend", backend_override, "Override backend kind: mock or http");
    cmd->add_option("--seed", seed, "Base seed; derives the per-purpose seeds");
  };

  CLI::App* run = app.add_subcommand("run", "Evaluate all (task x strategy) pairs, unbiased");
  add_common(run);
  run->add_option("--out", out_path, "Output records JSONL")->required();

  CLI::App* perturb =
      app.add_subcommand("perturb", "Truncation/corruption variants of existing records");
  add_common(perturb);
  perturb->add_option("--records", records_path, "Baseline records JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  perturb->add_option("--out", out_path, "Output variant records JSONL")->required();

  CLI::App* bias =
      app.add_subcommand("bias", "Both biased conditions plus the unbiased control");
  add_common(bias);
  bias->add_option("--out", out_path, "Output records JSONL")->required();

  CLI::App* report = app.add_subcommand("report", "Aggregate records into report + CSV");
  report->add_option("--records", report_inputs, "Record JSONL files")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (report->parsed()) return cmd_report(report_inputs, report_out);

    RunConfig config = RunConfig::load(config_path);
    if (!backend_override.empty()) config.override_backend(backend_override);
    if (seed >= 0) config.override_seed(static_cast<std::uint64_t>(seed));
    Session session(config);

    if (run->parsed()) return cmd_run(session, out_path);
    if (perturb->parsed()) return cmd_perturb(session, records_path, out_path);
    if (bias->parsed()) return cmd_bias(session, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
