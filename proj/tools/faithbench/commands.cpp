#include "faithbench/commands.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "faithbench/bias/bias.hpp"
#include "faithbench/data/datasets.hpp"
#include "faithbench/errors.hpp"
#include "faithbench/gateway/http_backend.hpp"
#include "faithbench/metrics/report.hpp"
#include "faithbench/perturb/perturb.hpp"
#include "faithbench/strings.hpp"

namespace faithbench::cli {

namespace {

// Append-only record writer that skips rows already present, so a crashed run
// resumes without duplicates.
class RecordWriter {
 public:
  explicit RecordWriter(const std::string& path) : path_(path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (strings::trim(line).empty()) continue;
      seen_.insert(EvalRecord::from_jsonl(line).dedup_key());
    }
    out_.open(path, std::ios::app);
    if (!out_) throw Error("cannot open records file " + path + " for append");
  }

  bool contains(const EvalRecord& record) const { return seen_.count(record.dedup_key()) > 0; }

  void write(const EvalRecord& record) {
    if (contains(record)) return;
    out_ << record.to_jsonl() << "\n";
    out_.flush();
    seen_.insert(record.dedup_key());
    ++written_;
  }

  std::size_t written() const { return written_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::set<std::string> seen_;
  std::size_t written_ = 0;
};

void write_meta(const std::string& out_path, const Session& session, std::size_t written) {
  nlohmann::ordered_json meta{{"backend", session.config.backend.kind},
                              {"backend_calls", session.backend_calls()},
                              {"records_written", written}};
  std::ofstream out(out_path + ".meta.json", std::ios::trunc);
  out << meta.dump(2) << "\n";
}

}  // namespace

Session::Session(const RunConfig& run_config) : config(run_config) {
  if (config.backend.kind == "mock") {
    auto scripted = config.backend.mock_script.empty()
                        ? std::make_shared<ScriptedMock>()
                        : std::make_shared<ScriptedMock>(
                              ScriptedMock::from_json_file(config.backend.mock_script));
    mock = scripted;
    backend = scripted;
  } else {
    backend = std::make_shared<HttpBackend>(config.backend.http);
  }
  GatewayOptions options;
  options.cache_dir = config.cache_dir;
  options.max_in_flight = config.max_in_flight;
  options.scorer = make_scorer(config.sampling.scorer_id);
  if (!config.best_of_n_stages.empty()) {
    options.best_of_n_stages.clear();
    for (const auto& name : config.best_of_n_stages) {
      options.best_of_n_stages.insert(stage_from_string(name));
    }
  }
  gateway = std::make_unique<ModelGateway>(backend, std::move(options));
  store = ExampleStore::load(config.example_store);
}

EvalContext Session::context() {
  return EvalContext{*gateway, store, config.prompts, config.sampling, config.factored};
}

std::vector<Question> load_eval_questions(const RunConfig& config, const TaskConfig& task) {
  std::vector<Question> pool = load_task(task.path, task.schema, task.name);
  if (task.binary_only) pool = filter_binary(pool);
  const std::size_t n =
      std::min<std::size_t>(pool.size(), static_cast<std::size_t>(config.questions_per_task));
  return sample_eval_set(pool, n, config.seeds.question_sampling);
}

std::vector<EvalRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open records file " + path);
  std::vector<EvalRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (strings::trim(line).empty()) continue;
    records.push_back(EvalRecord::from_jsonl(line));
  }
  return records;
}

int cmd_run(Session& session, const std::string& out_path) {
  RecordWriter writer(out_path);
  EvalContext ctx = session.context();
  for (const auto& task : session.config.tasks) {
    const std::vector<Question> questions = load_eval_questions(session.config, task);
    for (Strategy strategy : session.config.strategies) {
      std::vector<const Question*> pending;
      for (const auto& q : questions) {
        EvalRecord probe;
        probe.question_id = q.id;
        probe.strategy = strategy;
        if (!writer.contains(probe)) pending.push_back(&q);
      }
      if (pending.empty()) continue;

      // Fan out per question; the gateway bounds in-flight backend calls and
      // records land through the single writer in question order.
      const int workers =
          std::min<int>(session.config.workers, static_cast<int>(pending.size()));
      std::vector<EvalRecord> results(pending.size());
      if (workers <= 1) {
        for (std::size_t i = 0; i < pending.size(); ++i) {
          results[i] = answer_with_strategy(*pending[i], strategy, Condition::unbiased(), ctx);
        }
      } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
          pool.emplace_back([&] {
            while (true) {
              const std::size_t i = next.fetch_add(1);
              if (i >= pending.size()) return;
              results[i] =
                  answer_with_strategy(*pending[i], strategy, Condition::unbiased(), ctx);
            }
          });
        }
        for (auto& t : pool) t.join();
      }
      for (auto& record : results) writer.write(record);
    }
  }
  write_meta(out_path, session, writer.written());
  std::cerr << "run: wrote " << writer.written() << " records to " << out_path << "\n";
  return 0;
}

int cmd_perturb(Session& session, const std::string& records_path, const std::string& out_path) {
  EvalContext ctx = session.context();
  std::map<std::string, Question> questions;
  for (const auto& task : session.config.tasks) {
    std::vector<Question> pool = load_task(task.path, task.schema, task.name);
    if (task.binary_only) pool = filter_binary(pool);
    for (auto& q : pool) questions.emplace(q.id, std::move(q));
  }

  RecordWriter writer(out_path);
  std::size_t skipped = 0;
  for (const auto& parent : read_records(records_path)) {
    if (parent.lineage.kind != Lineage::Kind::None) continue;
    if (parent.condition.kind != ConditionKind::Unbiased) continue;
    if (!strategy_has_reasoning(parent.strategy)) continue;
    const auto it = questions.find(parent.question_id);
    if (it == questions.end()) {
      ++skipped;
      continue;
    }
    const Question& q = it->second;

    if (session.config.perturb.truncate && !parent.sample.steps.empty()) {
      const TruncationSet set = truncations(parent.sample);
      for (std::size_t k = 0; k < set.prefixes.size(); ++k) {
        EvalRecord probe;
        probe.question_id = q.id;
        probe.strategy = parent.strategy;
        probe.lineage = Lineage::truncated(static_cast<int>(k));
        if (writer.contains(probe)) continue;
        writer.write(reanswer(q, set.prefixes[k], Condition::unbiased(), ctx,
                              Lineage::truncated(static_cast<int>(k))));
      }
    }

    if (session.config.perturb.corrupt && !parent.sample.steps.empty()) {
      const CorruptionPlan plan =
          plan_corruption(parent.sample.steps.size(), parent.dedup_key(),
                          session.config.seeds.mistake_positions);
      for (int index : plan.mistake_indices) {
        EvalRecord probe;
        probe.question_id = q.id;
        probe.strategy = parent.strategy;
        probe.lineage = Lineage::corrupted(index);
        if (writer.contains(probe)) continue;
        try {
          const ReasoningStep corrupted = corrupt_step(parent.sample, index, ctx.gateway,
                                                       ctx.sampling, ctx.factored.parse_retries);
          const ReasoningSample variant =
              regenerate_tail(q, parent.sample, index, corrupted, ctx);
          writer.write(reanswer(q, variant, Condition::unbiased(), ctx,
                                Lineage::corrupted(index)));
        } catch (const Error& e) {
          EvalRecord failed;
          failed.question_id = q.id;
          failed.task = q.task_id;
          failed.strategy = parent.strategy;
          failed.gold_label = q.gold_label;
          failed.lineage = Lineage::corrupted(index);
          failed.sample.strategy = parent.strategy;
          failed.abort_reason = e.what();
          writer.write(failed);
        }
      }
    }
  }
  if (skipped > 0) {
    std::cerr << "perturb: " << skipped << " records referenced unknown questions\n";
  }
  write_meta(out_path, session, writer.written());
  std::cerr << "perturb: wrote " << writer.written() << " variant records to " << out_path
            << "\n";
  return 0;
}

int cmd_bias(Session& session, const std::string& out_path) {
  EvalContext ctx = session.context();
  RecordWriter writer(out_path);
  std::vector<std::pair<std::string, std::string>> mentions;

  for (const auto& task : session.config.tasks) {
    const std::vector<Question> questions = load_eval_questions(session.config, task);
    for (Strategy strategy : session.config.strategies) {
      for (ConditionKind kind : {ConditionKind::Unbiased, ConditionKind::SuggestedAnswer,
                                 ConditionKind::AnswerAlwaysA}) {
        if (kind == ConditionKind::AnswerAlwaysA && !strategy_uses_examples(strategy)) {
          continue;  // nothing to bias for zero-shot
        }
        BiasRunResult result = run_bias_condition(questions, strategy, kind, ctx,
                                                  session.config.seeds.suggestion);
        for (auto& record : result.records) writer.write(record);
        for (auto& m : result.mentions) mentions.push_back(std::move(m));
      }
    }
  }

  if (!mentions.empty()) {
    std::ofstream out(out_path + ".mentions.jsonl", std::ios::trunc);
    for (const auto& [key, evidence] : mentions) {
      out << nlohmann::ordered_json{{"record", key}, {"evidence", evidence}}.dump() << "\n";
    }
    std::cerr << "bias: flagged " << mentions.size()
              << " reasoning samples that mention the bias (see " << out_path
              << ".mentions.jsonl)\n";
  }
  write_meta(out_path, session, writer.written());
  std::cerr << "bias: wrote " << writer.written() << " records to " << out_path << "\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& record_paths, const std::string& out_dir) {
  std::vector<EvalRecord> records;
  std::set<std::string> seen;
  for (const auto& path : record_paths) {
    for (auto& record : read_records(path)) {
      if (seen.insert(record.dedup_key()).second) records.push_back(std::move(record));
    }
  }
  const Report report = build_report(records);

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(std::filesystem::path(out_dir) / "report.json", std::ios::trunc);
    out << report.dump_json();
  }
  {
    std::ofstream out(std::filesystem::path(out_dir) / "curve_points.csv", std::ios::trunc);
    out << report.curve_csv;
  }
  std::cerr << "report: wrote " << out_dir << "/report.json and curve_points.csv\n";
  return 0;
}

}  // namespace faithbench::cli
