#pragma once

#include <string>
#include <vector>

#include "faithbench/errors.hpp"

namespace faithbench {

// Failure worth retrying (timeouts, 429, 5xx). The gateway backs off and
// re-issues; after the attempt cap it surfaces GatewayError::BackendUnavailable.
class BackendTransientError : public Error {
 public:
  explicit BackendTransientError(const std::string& what) : Error(what) {}
};

struct BackendParams {
  double top_p = 0.95;
  double temperature = 0.8;
  int max_tokens = 768;
  std::vector<std::string> stop;  // forwarded to API backends that support it
};

// A raw text-completion endpoint. Implementations throw GatewayError;
// transient failures are marked retryable so the gateway can back off.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  virtual std::string complete(const std::string& prompt, const BackendParams& params) = 0;
  virtual std::string id() const = 0;
};

}  // namespace faithbench
