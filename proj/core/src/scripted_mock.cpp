#include "faithbench/gateway/scripted_mock.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "faithbench/strings.hpp"

namespace faithbench {

ScriptedMock::ScriptedMock(std::vector<MockRule> rules, std::string default_response)
    : rules_(std::move(rules)),
      cursors_(rules_.size(), 0),
      default_response_(std::move(default_response)) {}

ScriptedMock::ScriptedMock(ScriptedMock&& other) noexcept {
  std::lock_guard lock(other.mu_);
  rules_ = std::move(other.rules_);
  cursors_ = std::move(other.cursors_);
  default_response_ = std::move(other.default_response_);
  calls_ = other.calls_;
}

void ScriptedMock::add_rule(MockRule rule) {
  std::lock_guard lock(mu_);
  rules_.push_back(std::move(rule));
  cursors_.push_back(0);
}

ScriptedMock ScriptedMock::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<MockRule> rules;
  for (const auto& item : j.value("rules", nlohmann::json::array())) {
    MockRule rule;
    if (item.contains("match_all")) {
      for (const auto& m : item.at("match_all")) rule.match_all.push_back(m.get<std::string>());
    } else if (item.contains("match")) {
      rule.match_all.push_back(item.at("match").get<std::string>());
    }
    if (item.contains("responses")) {
      for (const auto& r : item.at("responses")) rule.responses.push_back(r.get<std::string>());
    } else if (item.contains("response")) {
      rule.responses.push_back(item.at("response").get<std::string>());
    }
    if (item.contains("ends_with")) rule.ends_with = item.at("ends_with").get<std::string>();
    rules.push_back(std::move(rule));
  }
  return ScriptedMock(std::move(rules), j.value("default_response", std::string{}));
}

ScriptedMock ScriptedMock::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mock script " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

std::string ScriptedMock::complete(const std::string& prompt, const BackendParams&) {
  std::lock_guard lock(mu_);
  ++calls_;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& rule = rules_[i];
    bool hit = !rule.match_all.empty() || !rule.ends_with.empty();
    for (const auto& needle : rule.match_all) {
      if (!strings::contains(prompt, needle)) {
        hit = false;
        break;
      }
    }
    if (hit && !rule.ends_with.empty()) {
      hit = prompt.size() >= rule.ends_with.size() &&
            prompt.compare(prompt.size() - rule.ends_with.size(), rule.ends_with.size(),
                           rule.ends_with) == 0;
    }
    if (!hit) continue;
    if (rule.responses.empty()) return default_response_;
    const std::string& out = rule.responses[cursors_[i] % rule.responses.size()];
    ++cursors_[i];
    return out;
  }
  return default_response_;
}

std::size_t ScriptedMock::call_count() const {
  std::lock_guard lock(mu_);
  return calls_;
}

void ScriptedMock::reset_call_count() {
  std::lock_guard lock(mu_);
  calls_ = 0;
}

}  // namespace faithbench
