#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "faithbench/gateway/backend.hpp"

namespace faithbench {

// One scripted rule: fires when every entry of `match_all` appears in the
// rendered prompt and, if set, the prompt ends with `ends_with` (open prompts
// end at the assistant stub, which cleanly separates pipeline stages).
// Responses cycle deterministically per rule.
struct MockRule {
  std::vector<std::string> match_all;
  std::vector<std::string> responses;
  std::string ends_with;
};

// Deterministic offline backend: first matching rule wins, identical request
// sequences produce identical response sequences. Thread-safe; counts calls so
// tests can assert cache behavior.
class ScriptedMock : public CompletionBackend {
 public:
  ScriptedMock() = default;
  explicit ScriptedMock(std::vector<MockRule> rules, std::string default_response = "");
  ScriptedMock(ScriptedMock&& other) noexcept;
  ScriptedMock& operator=(ScriptedMock&&) = delete;
  ScriptedMock(const ScriptedMock&) = delete;

  static ScriptedMock from_json_file(const std::filesystem::path& path);
  static ScriptedMock from_json_text(const std::string& text);

  void add_rule(MockRule rule);
  void set_default_response(std::string text) { default_response_ = std::move(text); }

  std::string complete(const std::string& prompt, const BackendParams& params) override;
  std::string id() const override { return "mock"; }

  std::size_t call_count() const;
  void reset_call_count();

 private:
  std::vector<MockRule> rules_;
  std::vector<std::size_t> cursors_;
  std::string default_response_;
  mutable std::mutex mu_;
  std::size_t calls_ = 0;
};

}  // namespace faithbench
