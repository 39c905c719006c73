#pragma once

#include <memory>
#include <string>
#include <vector>

#include "faithbench/config.hpp"
#include "faithbench/decomp/runner.hpp"
#include "faithbench/gateway/scripted_mock.hpp"

namespace faithbench::cli {

// Backend + gateway + store wired up from one config; shared by all commands
// and by the acceptance suite (which inspects the mock's call counter).
struct Session {
  explicit Session(const RunConfig& config);

  RunConfig config;
  std::shared_ptr<CompletionBackend> backend;
  std::shared_ptr<ScriptedMock> mock;  // null when backend is http
  std::unique_ptr<ModelGateway> gateway;
  ExampleStore store;

  EvalContext context();
  std::size_t backend_calls() const { return mock ? mock->call_count() : 0; }
};

// Unbiased evaluation over every (task x strategy); appends records to the
// output JSONL, resuming past rows already present.
int cmd_run(Session& session, const std::string& out_path);

// Truncation and corruption variants for the reasoning-bearing records of an
// existing records file.
int cmd_perturb(Session& session, const std::string& records_path, const std::string& out_path);

// Both biased conditions plus the unbiased control over the same question sets.
int cmd_bias(Session& session, const std::string& out_path);

// Aggregates one or more record files into report.json + curve_points.csv.
int cmd_report(const std::vector<std::string>& record_paths, const std::string& out_dir);

// Shared helpers (used by tests as well).
std::vector<EvalRecord> read_records(const std::string& path);
std::vector<Question> load_eval_questions(const RunConfig& config, const TaskConfig& task);

}  // namespace faithbench::cli
