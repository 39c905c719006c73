#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "faithbench/decomp/factored.hpp"
#include "faithbench/gateway/http_backend.hpp"
#include "faithbench/prompts/builders.hpp"
#include "faithbench/reasoning.hpp"
#include "faithbench/sampling.hpp"

namespace faithbench::cli {

struct TaskConfig {
  std::string name;
  std::string path;
  std::string schema = "internal";
  bool binary_only = false;  // keep yes/no questions only (multi-hop tasks)
};

struct BackendSpec {
  std::string kind = "mock";  // "mock" | "http"
  std::string mock_script;    // rules file for the scripted mock
  HttpBackendConfig http;
};

struct Seeds {
  std::uint64_t question_sampling = 1;
  std::uint64_t suggestion = 2;
  std::uint64_t mistake_positions = 3;
};

struct PerturbSpec {
  bool truncate = true;
  bool corrupt = true;
};

// One declarative file drives the whole matrix; flags override single fields.
struct RunConfig {
  BackendSpec backend;
  std::string cache_dir = ".faithbench-cache";
  std::vector<TaskConfig> tasks;
  std::vector<Strategy> strategies;
  int questions_per_task = 300;
  SamplingConfig sampling;
  Seeds seeds;
  std::string example_store = "core/data/fewshot_examples.json";
  PromptOptions prompts;
  FactoredConfig factored;
  PerturbSpec perturb;
  int max_in_flight = 8;
  // Per-question fan-out for the run pipeline. 1 keeps runs byte-deterministic
  // with response-cycling mock scripts; raise it for real HTTP backends.
  int workers = 1;
  // Stages best-of-N applies to when a scorer is configured; empty = all.
  std::vector<std::string> best_of_n_stages;

  static RunConfig load(const std::filesystem::path& path);

  void override_backend(const std::string& kind);
  void override_seed(std::uint64_t base);
};

}  // namespace faithbench::cli
