#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "faithbench/errors.hpp"
#include "faithbench/gateway/gateway.hpp"
#include "faithbench/gateway/http_backend.hpp"

using namespace faithbench;

namespace {

// In-process completions endpoint for exercising the HTTP adapter.
struct TestServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int> hits{0};
  std::atomic<int> fail_first{0};  // respond 500 to this many requests

  TestServer() {
    server.Post("/v1/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      if (fail_first.fetch_sub(1) > 0) {
        res.status = 500;
        res.set_content("transient", "text/plain");
        return;
      }
      const nlohmann::json body = nlohmann::json::parse(req.body);
      const std::string prompt = body.at("prompt").get<std::string>();
      if (prompt.find("overflow") != std::string::npos) {
        res.status = 400;
        res.set_content("prompt exceeds the model context window", "text/plain");
        return;
      }
      nlohmann::json reply{{"choices",
                            {{{"text", "echo:" + std::to_string(prompt.size()) + ":auth=" +
                                           req.get_header_value("Authorization")}}}}};
      if (body.contains("stop")) reply["stop_seen"] = body.at("stop");
      res.set_content(reply.dump(), "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~TestServer() {
    server.stop();
    thread.join();
  }
};

HttpBackendConfig config_for(const TestServer& server) {
  HttpBackendConfig config;
  config.base_url = "http://127.0.0.1:" + std::to_string(server.port);
  config.model = "test-model";
  config.api_key_env = "FAITHBENCH_TEST_KEY";
  return config;
}

CompletionRequest request_for(const std::string& question) {
  CompletionRequest req;
  req.prompt.history.push_human(question);
  return req;
}

}  // namespace

TEST_CASE("http backend posts the completions shape and reads choices[0].text") {
  TestServer server;
  ::setenv("FAITHBENCH_TEST_KEY", "sk-test-123", 1);
  HttpBackend backend(config_for(server));
  BackendParams params;
  const std::string out = backend.complete("Hello prompt", params);
  CHECK(out.rfind("echo:", 0) == 0);
  CHECK(out.find("auth=Bearer sk-test-123") != std::string::npos);
  CHECK(server.hits == 1);
}

TEST_CASE("gateway retries transient http failures with backoff") {
  TestServer server;
  server.fail_first = 2;
  GatewayOptions options;
  options.sleeper = [](std::chrono::milliseconds) {};
  ModelGateway gateway(std::make_shared<HttpBackend>(config_for(server)), std::move(options));
  const std::string out = gateway.complete(request_for("after two failures"));
  CHECK(out.rfind("echo:", 0) == 0);
  CHECK(server.hits == 3);
}

TEST_CASE("context-length rejections surface as ContextTooLong without retries") {
  TestServer server;
  GatewayOptions options;
  options.sleeper = [](std::chrono::milliseconds) {};
  ModelGateway gateway(std::make_shared<HttpBackend>(config_for(server)), std::move(options));
  try {
    gateway.complete(request_for("please overflow now"));
    FAIL("expected GatewayError");
  } catch (const GatewayError& e) {
    CHECK(e.kind() == GatewayError::Kind::ContextTooLong);
  }
  CHECK(server.hits == 1);  // permanent failures are not retried
}

TEST_CASE("exhausted retries surface BackendUnavailable") {
  TestServer server;
  server.fail_first = 100;
  GatewayOptions options;
  options.sleeper = [](std::chrono::milliseconds) {};
  options.retry.max_attempts = 3;
  ModelGateway gateway(std::make_shared<HttpBackend>(config_for(server)), std::move(options));
  try {
    gateway.complete(request_for("always failing"));
    FAIL("expected GatewayError");
  } catch (const GatewayError& e) {
    CHECK(e.kind() == GatewayError::Kind::BackendUnavailable);
  }
  CHECK(server.hits == 3);
}
