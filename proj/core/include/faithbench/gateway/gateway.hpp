#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <semaphore>
#include <set>
#include <string>
#include <vector>

#include "faithbench/gateway/backend.hpp"
#include "faithbench/gateway/completion_cache.hpp"
#include "faithbench/gateway/scorer.hpp"
#include "faithbench/sampling.hpp"
#include "faithbench/transcript.hpp"

namespace faithbench {

// Pipeline stages a sampling call can originate from; used to scope best-of-N.
enum class SampleStage { Reasoning, Answer, Decomposition, Subanswer, Recomposition, Corruption };

const char* to_string(SampleStage stage);
SampleStage stage_from_string(const std::string& name);

struct CompletionRequest {
  OpenPrompt prompt;
  SamplingConfig config;
  std::vector<std::string> stop_sequences;
  SampleStage stage = SampleStage::Answer;
  int resample_index = 0;  // salts the cache key for parse-failure re-samples
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_delay{1000};
  double multiplier = 2.0;
  double jitter_fraction = 0.1;
};

struct GatewayOptions {
  std::optional<std::filesystem::path> cache_dir;
  RetryPolicy retry;
  int max_in_flight = 8;
  std::shared_ptr<Scorer> scorer;  // nullptr = pass-through single draw
  std::set<SampleStage> best_of_n_stages = {
      SampleStage::Reasoning,    SampleStage::Answer,    SampleStage::Decomposition,
      SampleStage::Subanswer,    SampleStage::Recomposition, SampleStage::Corruption};
  // Injected so tests do not sleep for real.
  std::function<void(std::chrono::milliseconds)> sleeper;
};

// Uniform completion interface over one backend: retry with jittered
// exponential backoff, inclusive stop-sequence truncation (parsers still see
// the terminator), bounded concurrent dispatch, persistent caching, and
// best-of-N reranking when a scorer is configured.
class ModelGateway {
 public:
  ModelGateway(std::shared_ptr<CompletionBackend> backend, GatewayOptions options);

  // One completion, no cache. Retries transient failures; throws GatewayError
  // (BackendUnavailable) when attempts are exhausted.
  std::string complete(const CompletionRequest& req);

  // Draws config.n_best completions and returns the argmax under the scorer;
  // ties break toward the earliest draw.
  std::string best_of_n(const CompletionRequest& req, const Scorer& scorer);

  // Cache-through complete (the pipeline entry point). Applies best-of-N when
  // a scorer is configured, the stage is enabled, and n_best > 1.
  std::string sample(const CompletionRequest& req);

  CompletionBackend& backend() { return *backend_; }
  const GatewayOptions& options() const { return options_; }

  // Completion text cut immediately after the earliest stop occurrence.
  static std::string truncate_at_stop(std::string text, const std::vector<std::string>& stops);

 private:
  std::string cache_material(const CompletionRequest& req, int draw_index) const;
  std::string complete_uncached(const CompletionRequest& req);
  std::string cached_single(const CompletionRequest& req, int draw_index);

  std::shared_ptr<CompletionBackend> backend_;
  GatewayOptions options_;
  std::optional<CompletionCache> cache_;
  std::counting_semaphore<256> in_flight_;
  std::mt19937_64 jitter_rng_{0x5eed};
  std::mutex jitter_mu_;
};

}  // namespace faithbench
