#pragma once

#include <string>

#include "faithbench/gateway/backend.hpp"

namespace faithbench {

// Settings for a JSON-over-HTTP completion endpoint. The wire shape follows
// the common completions convention: POST {path} with {model, prompt,
// max_tokens, temperature, top_p, stop} and choices[0].text in the reply.
struct HttpBackendConfig {
  std::string base_url;          // e.g. "http://localhost:8000"
  std::string path = "/v1/completions";
  std::string model;
  std::string api_key_env = "FAITHBENCH_API_KEY";  // credential read from env
  int timeout_seconds = 120;
};

class HttpBackend : public CompletionBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::string complete(const std::string& prompt, const BackendParams& params) override;
  std::string id() const override;

 private:
  HttpBackendConfig config_;
  std::string api_key_;
};

}  // namespace faithbench
