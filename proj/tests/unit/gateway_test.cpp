#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include "faithbench/errors.hpp"
#include "faithbench/gateway/gateway.hpp"
#include "faithbench/gateway/scripted_mock.hpp"

using namespace faithbench;

namespace {

CompletionRequest request_for(const std::string& question, std::vector<std::string> stops = {}) {
  CompletionRequest req;
  req.prompt.history.push_human(question);
  req.prompt.assistant_stub = "";
  req.stop_sequences = std::move(stops);
  return req;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("faithbench-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

class FlakyBackend : public CompletionBackend {
 public:
  explicit FlakyBackend(int failures) : failures_(failures) {}
  std::string complete(const std::string&, const BackendParams&) override {
    if (calls_++ < failures_) throw BackendTransientError("flaky");
    return "recovered";
  }
  std::string id() const override { return "flaky"; }
  int calls() const { return calls_; }

 private:
  int failures_;
  int calls_ = 0;
};

GatewayOptions no_sleep_options() {
  GatewayOptions options;
  options.sleeper = [](std::chrono::milliseconds) {};
  return options;
}

}  // namespace

TEST_CASE("scripted mock: first rule wins, responses cycle, default falls through") {
  auto mock = std::make_shared<ScriptedMock>(
      std::vector<MockRule>{{{"Michael Jackson"}, {"scripted answer"}},
                            {{"cycle"}, {"one", "two"}}},
      "fallback");
  BackendParams params;
  CHECK(mock->complete("Question about Michael Jackson", params) == "scripted answer");
  CHECK(mock->complete("cycle cycle", params) == "one");
  CHECK(mock->complete("cycle cycle", params) == "two");
  CHECK(mock->complete("cycle cycle", params) == "one");
  CHECK(mock->complete("nothing matches", params) == "fallback");
  CHECK(mock->call_count() == 5);
}

TEST_CASE("scripted mock honours conjunction matchers") {
  ScriptedMock mock(std::vector<MockRule>{{{"alpha", "beta"}, {"both"}}, {{"alpha"}, {"only"}}});
  BackendParams params;
  CHECK(mock.complete("alpha beta", params) == "both");
  CHECK(mock.complete("alpha gamma", params) == "only");
}

TEST_CASE("scripted mock loads from json") {
  auto mock = ScriptedMock::from_json_text(R"({
    "rules": [
      {"match": "hello", "response": "hi"},
      {"match_all": ["a", "b"], "responses": ["r1", "r2"]}
    ],
    "default_response": "dunno"
  })");
  BackendParams params;
  CHECK(mock.complete("hello there", params) == "hi");
  CHECK(mock.complete("a b", params) == "r1");
  CHECK(mock.complete("a b", params) == "r2");
  CHECK(mock.complete("zzz", params) == "dunno");
}

TEST_CASE("identical request sequences produce identical response sequences") {
  const std::vector<MockRule> rules{{{"q"}, {"r1", "r2", "r3"}}};
  ScriptedMock a{rules};
  ScriptedMock b{rules};
  BackendParams params;
  for (int i = 0; i < 7; ++i) {
    CHECK(a.complete("q", params) == b.complete("q", params));
  }
}

TEST_CASE("stop truncation is inclusive and takes the earliest stop") {
  CHECK(ModelGateway::truncate_at_stop("reasoning<FIN></FIN> extra", {"</FIN>"}) ==
        "reasoning<FIN></FIN>");
  CHECK(ModelGateway::truncate_at_stop("a</result>junk</FIN>", {"</FIN>", "</result>"}) ==
        "a</result>");
  CHECK(ModelGateway::truncate_at_stop("no stops here", {"</FIN>"}) == "no stops here");
}

TEST_CASE("complete truncates at the stop sequence") {
  auto mock = std::make_shared<ScriptedMock>(
      std::vector<MockRule>{{{"q"}, {"first<FIN></FIN> trailing junk"}}});
  ModelGateway gateway(mock, no_sleep_options());
  CHECK(gateway.complete(request_for("q", {"</FIN>"})) == "first<FIN></FIN>");
}

TEST_CASE("retry recovers from transient failures and gives up after the cap") {
  {
    auto backend = std::make_shared<FlakyBackend>(3);
    ModelGateway gateway(backend, no_sleep_options());
    CHECK(gateway.complete(request_for("q")) == "recovered");
    CHECK(backend->calls() == 4);
  }
  {
    auto backend = std::make_shared<FlakyBackend>(99);
    ModelGateway gateway(backend, no_sleep_options());
    try {
      gateway.complete(request_for("q"));
      FAIL("expected GatewayError");
    } catch (const GatewayError& e) {
      CHECK(e.kind() == GatewayError::Kind::BackendUnavailable);
    }
    CHECK(backend->calls() == 5);  // default attempt cap
  }
}

TEST_CASE("cache: hits skip the backend, distinct configs get distinct keys") {
  auto mock = std::make_shared<ScriptedMock>(std::vector<MockRule>{{{"q"}, {"value"}}});
  GatewayOptions options = no_sleep_options();
  options.cache_dir = fresh_dir("cache-basic");
  ModelGateway gateway(mock, options);

  CHECK(gateway.sample(request_for("q")) == "value");
  CHECK(mock->call_count() == 1);
  CHECK(gateway.sample(request_for("q")) == "value");
  CHECK(mock->call_count() == 1);  // served from cache

  CompletionRequest hotter = request_for("q");
  hotter.config.temperature = 1.0;
  CHECK(gateway.sample(hotter) == "value");
  CHECK(mock->call_count() == 2);  // different key

  // Deleting the cache directory forces a backend call again.
  std::filesystem::remove_all(*options.cache_dir);
  std::filesystem::create_directories(*options.cache_dir);
  CHECK(gateway.sample(request_for("q")) == "value");
  CHECK(mock->call_count() == 3);
}

TEST_CASE("cache round-trip is bit-exact") {
  const std::string payload = "line1\nline2\t <tags> \xF0\x9F\x8C\x8D trailing  ";
  auto mock = std::make_shared<ScriptedMock>(std::vector<MockRule>{{{"q"}, {payload}}});
  GatewayOptions options = no_sleep_options();
  options.cache_dir = fresh_dir("cache-bits");
  ModelGateway gateway(mock, options);
  CHECK(gateway.sample(request_for("q")) == payload);
  CHECK(gateway.sample(request_for("q")) == payload);
  CHECK(mock->call_count() == 1);
}

TEST_CASE("best_of_n picks the argmax and breaks ties toward the first draw") {
  auto mock = std::make_shared<ScriptedMock>(
      std::vector<MockRule>{{{"q"}, {"dddd", "nnnnnnnnn", "xx"}}});
  ModelGateway gateway(mock, no_sleep_options());

  CompletionRequest req = request_for("q");
  req.config.n_best = 3;

  // Oracle: enumerate the draws and take the max length.
  const std::vector<std::string> draws{"dddd", "nnnnnnnnn", "xx"};
  std::string expected = draws[0];
  for (const auto& d : draws) {
    if (d.size() > expected.size()) expected = d;
  }
  CHECK(gateway.best_of_n(req, LengthScorer{}) == expected);

  mock->reset_call_count();
  ScriptedMock fresh(std::vector<MockRule>{{{"q"}, {"first", "second", "third"}}});
  auto fresh_ptr = std::make_shared<ScriptedMock>(std::move(fresh));
  ModelGateway tie_gateway(fresh_ptr, no_sleep_options());
  CHECK(tie_gateway.best_of_n(req, ConstantScorer{}) == "first");
}

TEST_CASE("best_of_n with n=1 equals complete") {
  for (int i = 0; i < 3; ++i) {
    auto mock = std::make_shared<ScriptedMock>(
        std::vector<MockRule>{{{"q"}, {"only-draw-" + std::to_string(i)}}});
    ModelGateway gateway(mock, no_sleep_options());
    CompletionRequest req = request_for("q");
    req.config.n_best = 1;
    CHECK(gateway.best_of_n(req, LengthScorer{}) == gateway.complete(req));
  }
}

TEST_CASE("sample is a single pass-through draw without a scorer") {
  auto mock = std::make_shared<ScriptedMock>(std::vector<MockRule>{{{"q"}, {"a", "b", "c"}}});
  ModelGateway gateway(mock, no_sleep_options());
  CompletionRequest req = request_for("q");
  req.config.n_best = 5;
  CHECK(gateway.sample(req) == "a");
  CHECK(mock->call_count() == 1);
}

TEST_CASE("sample applies best-of-n when a scorer is configured") {
  auto mock = std::make_shared<ScriptedMock>(
      std::vector<MockRule>{{{"q"}, {"s", "loooooooong", "mid"}}});
  GatewayOptions options = no_sleep_options();
  options.scorer = std::make_shared<LengthScorer>();
  ModelGateway gateway(mock, options);
  CompletionRequest req = request_for("q");
  req.config.n_best = 3;
  CHECK(gateway.sample(req) == "loooooooong");
  CHECK(mock->call_count() == 3);
}

TEST_CASE("concurrent dispatch stays within the in-flight limit") {
  class CountingBackend : public CompletionBackend {
   public:
    std::string complete(const std::string&, const BackendParams&) override {
      const int now = ++in_flight_;
      int snapshot = peak_.load();
      while (now > snapshot && !peak_.compare_exchange_weak(snapshot, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
      --in_flight_;
      return "ok";
    }
    std::string id() const override { return "counting"; }
    int peak() const { return peak_.load(); }

   private:
    std::atomic<int> in_flight_{0};
    std::atomic<int> peak_{0};
  };

  auto backend = std::make_shared<CountingBackend>();
  GatewayOptions options = no_sleep_options();
  options.max_in_flight = 2;
  ModelGateway gateway(backend, options);

  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&gateway, i] {
      CHECK(gateway.complete(request_for("q" + std::to_string(i))) == "ok");
    });
  }
  for (auto& t : threads) t.join();
  CHECK(backend->peak() <= 2);
}
