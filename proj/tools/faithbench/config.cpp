#include "faithbench/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "faithbench/errors.hpp"

namespace faithbench::cli {

namespace {

using nlohmann::json;

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  json j = json::parse(in);

  RunConfig config;
  if (j.contains("backend")) {
    const auto& b = j.at("backend");
    maybe(b, "kind", config.backend.kind);
    maybe(b, "script", config.backend.mock_script);
    maybe(b, "base_url", config.backend.http.base_url);
    maybe(b, "path", config.backend.http.path);
    maybe(b, "model", config.backend.http.model);
    maybe(b, "api_key_env", config.backend.http.api_key_env);
    maybe(b, "timeout_seconds", config.backend.http.timeout_seconds);
  }
  maybe(j, "cache_dir", config.cache_dir);
  if (j.contains("tasks")) {
    for (const auto& t : j.at("tasks")) {
      TaskConfig task;
      task.name = t.at("name").get<std::string>();
      task.path = t.at("path").get<std::string>();
      maybe(t, "schema", task.schema);
      maybe(t, "binary_only", task.binary_only);
      config.tasks.push_back(std::move(task));
    }
  }
  if (j.contains("strategies")) {
    for (const auto& s : j.at("strategies")) {
      config.strategies.push_back(strategy_from_string(s.get<std::string>()));
    }
  }
  maybe(j, "questions_per_task", config.questions_per_task);
  if (j.contains("sampling")) {
    const auto& s = j.at("sampling");
    maybe(s, "top_p", config.sampling.top_p);
    maybe(s, "temperature", config.sampling.temperature);
    maybe(s, "n_best", config.sampling.n_best);
    maybe(s, "max_tokens", config.sampling.max_tokens);
    maybe(s, "scorer", config.sampling.scorer_id);
    config.sampling.validate();
  }
  if (j.contains("seeds")) {
    const auto& s = j.at("seeds");
    maybe(s, "question_sampling", config.seeds.question_sampling);
    maybe(s, "suggestion", config.seeds.suggestion);
    maybe(s, "mistake_positions", config.seeds.mistake_positions);
  }
  maybe(j, "example_store", config.example_store);
  if (j.contains("prompts")) {
    const auto& p = j.at("prompts");
    maybe(p, "follow_up", config.prompts.follow_up);
    maybe(p, "fd_answer_cue", config.prompts.fd_answer_cue);
    maybe(p, "max_examples", config.prompts.max_examples);
  }
  if (j.contains("factored")) {
    const auto& f = j.at("factored");
    maybe(f, "max_rounds", config.factored.max_rounds);
    maybe(f, "parse_retries", config.factored.parse_retries);
  }
  if (j.contains("perturb")) {
    const auto& p = j.at("perturb");
    maybe(p, "truncate", config.perturb.truncate);
    maybe(p, "corrupt", config.perturb.corrupt);
  }
  maybe(j, "max_in_flight", config.max_in_flight);
  maybe(j, "workers", config.workers);
  if (j.contains("sampling") && j.at("sampling").contains("best_of_n_stages")) {
    for (const auto& s : j.at("sampling").at("best_of_n_stages")) {
      config.best_of_n_stages.push_back(s.get<std::string>());
    }
  }
  if (config.workers < 1) throw Error("workers must be positive");

  if (config.tasks.empty()) throw Error("config lists no tasks");
  if (config.strategies.empty()) throw Error("config lists no strategies");
  if (config.backend.kind != "mock" && config.backend.kind != "http")
    throw Error("backend.kind must be \"mock\" or \"http\"");
  return config;
}

void RunConfig::override_backend(const std::string& kind) {
  if (kind != "mock" && kind != "http") throw Error("--backend must be mock or http");
  backend.kind = kind;
}

void RunConfig::override_seed(std::uint64_t base) {
  seeds.question_sampling = base;
  seeds.suggestion = base + 1;
  seeds.mistake_positions = base + 2;
}

}  // namespace faithbench::cli
