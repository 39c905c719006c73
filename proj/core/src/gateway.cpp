#include "faithbench/gateway/gateway.hpp"

#include <algorithm>
#include <thread>

namespace faithbench {

const char* to_string(SampleStage stage) {
  switch (stage) {
    case SampleStage::Reasoning: return "reasoning";
    case SampleStage::Answer: return "answer";
    case SampleStage::Decomposition: return "decomposition";
    case SampleStage::Subanswer: return "subanswer";
    case SampleStage::Recomposition: return "recomposition";
    case SampleStage::Corruption: return "corruption";
  }
  return "?";
}

SampleStage stage_from_string(const std::string& name) {
  for (SampleStage stage :
       {SampleStage::Reasoning, SampleStage::Answer, SampleStage::Decomposition,
        SampleStage::Subanswer, SampleStage::Recomposition, SampleStage::Corruption}) {
    if (name == to_string(stage)) return stage;
  }
  throw Error("unknown sampling stage \"" + name + "\"");
}

ModelGateway::ModelGateway(std::shared_ptr<CompletionBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)),
      options_(std::move(options)),
      in_flight_(std::clamp(options_.max_in_flight, 1, 256)) {
  if (options_.cache_dir) cache_.emplace(*options_.cache_dir);
  if (!options_.sleeper) {
    options_.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

std::string ModelGateway::truncate_at_stop(std::string text,
                                           const std::vector<std::string>& stops) {
  std::size_t cut = std::string::npos;
  for (const auto& stop : stops) {
    if (stop.empty()) continue;
    const std::size_t hit = text.find(stop);
    if (hit == std::string::npos) continue;
    cut = std::min(cut, hit + stop.size());
  }
  if (cut != std::string::npos) text.resize(cut);
  return text;
}

std::string ModelGateway::complete_uncached(const CompletionRequest& req) {
  BackendParams params;
  params.top_p = req.config.top_p;
  params.temperature = req.config.temperature;
  params.max_tokens = req.config.max_tokens;
  params.stop = req.stop_sequences;

  const std::string prompt = req.prompt.render();
  const RetryPolicy& retry = options_.retry;
  std::chrono::milliseconds delay = retry.initial_delay;
  std::string last_error;

  for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
    try {
      in_flight_.acquire();
      struct Release {
        std::counting_semaphore<256>& sem;
        ~Release() { sem.release(); }
      } release{in_flight_};
      std::string out = backend_->complete(prompt, params);
      return truncate_at_stop(std::move(out), req.stop_sequences);
    } catch (const BackendTransientError& e) {
      last_error = e.what();
      if (attempt == retry.max_attempts) break;
      std::chrono::milliseconds jitter{0};
      if (retry.jitter_fraction > 0.0) {
        std::lock_guard lock(jitter_mu_);
        const auto span = static_cast<std::uint64_t>(
            static_cast<double>(delay.count()) * retry.jitter_fraction);
        if (span > 0) jitter = std::chrono::milliseconds(jitter_rng_() % (span + 1));
      }
      options_.sleeper(delay + jitter);
      delay = std::chrono::milliseconds(
          static_cast<std::int64_t>(static_cast<double>(delay.count()) * retry.multiplier));
    }
  }
  throw GatewayError(GatewayError::Kind::BackendUnavailable,
                     "backend unavailable after " + std::to_string(retry.max_attempts) +
                         " attempts: " + last_error);
}

std::string ModelGateway::complete(const CompletionRequest& req) { return complete_uncached(req); }

std::string ModelGateway::cache_material(const CompletionRequest& req, int draw_index) const {
  std::string material = req.prompt.render();
  material += '\x1f';
  material += std::to_string(req.config.top_p) + "," + std::to_string(req.config.temperature) +
              "," + std::to_string(req.config.n_best) + "," + std::to_string(req.config.max_tokens);
  material += '\x1f';
  for (const auto& stop : req.stop_sequences) {
    material += stop;
    material += '\x1e';
  }
  material += '\x1f';
  material += backend_->id();
  material += '\x1f';
  material += std::to_string(req.resample_index);
  material += '\x1f';
  material += std::to_string(draw_index);
  return material;
}

std::string ModelGateway::cached_single(const CompletionRequest& req, int draw_index) {
  if (!cache_) return complete_uncached(req);
  const std::uint64_t key = CompletionCache::hash_key(cache_material(req, draw_index));
  if (auto hit = cache_->get(key)) return *hit;
  std::string value = complete_uncached(req);
  cache_->put(key, value);
  return value;
}

std::string ModelGateway::best_of_n(const CompletionRequest& req, const Scorer& scorer) {
  const int n = std::max(1, req.config.n_best);
  std::string best;
  double best_score = 0.0;
  for (int i = 0; i < n; ++i) {
    std::string candidate = cached_single(req, i);
    const double s = scorer.score(req.prompt.history, candidate);
    if (i == 0 || s > best_score) {  // ties keep the earliest draw
      best = std::move(candidate);
      best_score = s;
    }
  }
  return best;
}

std::string ModelGateway::sample(const CompletionRequest& req) {
  if (options_.scorer && req.config.n_best > 1 &&
      options_.best_of_n_stages.count(req.stage) > 0) {
    return best_of_n(req, *options_.scorer);
  }
  return cached_single(req, 0);
}

}  // namespace faithbench
