#include "faithbench/gateway/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "faithbench/strings.hpp"

namespace faithbench {

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
}

std::string HttpBackend::id() const {
  return "http:" + config_.base_url + config_.path + ":" + config_.model;
}

std::string HttpBackend::complete(const std::string& prompt, const BackendParams& params) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);

  nlohmann::json body{{"prompt", prompt},
                      {"max_tokens", params.max_tokens},
                      {"temperature", params.temperature},
                      {"top_p", params.top_p}};
  if (!config_.model.empty()) body["model"] = config_.model;
  if (!params.stop.empty()) body["stop"] = params.stop;

  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  auto res = client.Post(config_.path, headers, body.dump(), "application/json");
  if (!res) {
    throw BackendTransientError("http transport error: " + httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw BackendTransientError("http status " + std::to_string(res->status));
  }
  if (res->status != 200) {
    const std::string detail = res->body.substr(0, 400);
    if (res->status == 400 && strings::icontains(detail, "context")) {
      throw GatewayError(GatewayError::Kind::ContextTooLong, "context too long: " + detail);
    }
    throw GatewayError(GatewayError::Kind::BackendUnavailable,
                       "http status " + std::to_string(res->status) + ": " + detail);
  }

  nlohmann::json reply = nlohmann::json::parse(res->body);
  if (reply.contains("choices") && !reply["choices"].empty()) {
    const auto& choice = reply["choices"][0];
    if (choice.contains("text")) return choice["text"].get<std::string>();
  }
  if (reply.contains("completion")) return reply["completion"].get<std::string>();
  throw GatewayError(GatewayError::Kind::BackendUnavailable,
                     "unrecognized completion response shape");
}

}  // namespace faithbench
