#include "faithbench/data/datasets.hpp"

#include <fstream>
#include <optional>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "faithbench/errors.hpp"
#include "faithbench/strings.hpp"

namespace faithbench {

namespace {

using nlohmann::json;

Question parse_internal(const json& j, const std::string& task_id, long line) {
  try {
    std::vector<std::string> choices;
    for (const auto& c : j.at("choices")) choices.push_back(c.get<std::string>());
    const std::string task = task_id.empty() ? j.at("task").get<std::string>() : task_id;
    return make_question(j.at("id").get<std::string>(), task, j.at("question").get<std::string>(),
                         std::move(choices), j.at("gold").get<int>());
  } catch (const json::exception& e) {
    throw SchemaViolation(e.what(), line);
  } catch (const Error& e) {
    throw SchemaViolation(e.what(), line);
  }
}

// HotpotQA distractor/fullwiki format: {"_id", "question", "answer"}. Only
// yes/no items are representable as multiple choice (Yes is choice A by
// source convention); span-answer items are skipped, not errors.
std::optional<Question> parse_hotpotqa(const json& j, const std::string& task_id, long line) {
  try {
    const std::string answer = strings::to_lower(j.at("answer").get<std::string>());
    if (answer != "yes" && answer != "no") return std::nullopt;
    return make_question(j.at("_id").get<std::string>(),
                         task_id.empty() ? "hotpotqa" : task_id,
                         j.at("question").get<std::string>(), {"Yes", "No"},
                         answer == "yes" ? 0 : 1);
  } catch (const json::exception& e) {
    throw SchemaViolation(e.what(), line);
  }
}

// StrategyQA: {"qid", "question", "answer": bool}.
Question parse_strategyqa(const json& j, const std::string& task_id, long line) {
  try {
    return make_question(j.at("qid").get<std::string>(),
                         task_id.empty() ? "strategyqa" : task_id,
                         j.at("question").get<std::string>(), {"Yes", "No"},
                         j.at("answer").get<bool>() ? 0 : 1);
  } catch (const json::exception& e) {
    throw SchemaViolation(e.what(), line);
  }
}

// OpenBookQA: {"id", "question": {"stem", "choices": [{"text", "label"}]}, "answerKey"}.
Question parse_openbookqa(const json& j, const std::string& task_id, long line) {
  try {
    const auto& question = j.at("question");
    std::vector<std::string> choices;
    int gold = -1;
    const std::string key = j.at("answerKey").get<std::string>();
    int i = 0;
    for (const auto& c : question.at("choices")) {
      choices.push_back(c.at("text").get<std::string>());
      if (c.at("label").get<std::string>() == key) gold = i;
      ++i;
    }
    if (gold < 0) throw SchemaViolation("answerKey \"" + key + "\" not among choices", line);
    return make_question(j.at("id").get<std::string>(),
                         task_id.empty() ? "openbookqa" : task_id,
                         question.at("stem").get<std::string>(), std::move(choices), gold);
  } catch (const json::exception& e) {
    throw SchemaViolation(e.what(), line);
  }
}

// TruthfulQA multiple-choice (mc1-style): {"question", "mc1_targets": {choice: 0/1}}
// or {"question", "choices": [...], "label": int}; choices kept in file order.
Question parse_truthfulqa(const json& j, const std::string& task_id, long line, long ordinal) {
  try {
    const std::string id =
        j.contains("id") ? j.at("id").get<std::string>() : "truthfulqa-" + std::to_string(ordinal);
    const std::string task = task_id.empty() ? "truthfulqa" : task_id;
    if (j.contains("mc1_targets")) {
      std::vector<std::string> choices;
      int gold = -1;
      int i = 0;
      for (const auto& [text, is_gold] : j.at("mc1_targets").items()) {
        choices.push_back(text);
        if (is_gold.get<int>() == 1) gold = i;
        ++i;
      }
      if (gold < 0) throw SchemaViolation("mc1_targets has no correct choice", line);
      return make_question(id, task, j.at("question").get<std::string>(), std::move(choices),
                           gold);
    }
    std::vector<std::string> choices;
    for (const auto& c : j.at("choices")) choices.push_back(c.get<std::string>());
    return make_question(id, task, j.at("question").get<std::string>(), std::move(choices),
                         j.at("label").get<int>());
  } catch (const json::exception& e) {
    throw SchemaViolation(e.what(), line);
  }
}

}  // namespace

std::vector<Question> load_task(const std::filesystem::path& path, const std::string& schema_id,
                                const std::string& task_id) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open task file " + path.string());

  std::vector<Question> questions;
  std::set<std::string> seen_ids;
  std::string line_text;
  long line = 0;
  long ordinal = 0;
  while (std::getline(in, line_text)) {
    ++line;
    if (strings::trim(line_text).empty()) continue;
    json j;
    try {
      j = json::parse(line_text);
    } catch (const json::exception& e) {
      throw SchemaViolation(e.what(), line);
    }
    std::optional<Question> q = [&]() -> std::optional<Question> {
      if (schema_id == "internal") return parse_internal(j, task_id, line);
      if (schema_id == "hotpotqa") return parse_hotpotqa(j, task_id, line);
      if (schema_id == "strategyqa") return parse_strategyqa(j, task_id, line);
      if (schema_id == "openbookqa") return parse_openbookqa(j, task_id, line);
      if (schema_id == "truthfulqa") return parse_truthfulqa(j, task_id, line, ordinal);
      throw Error("unknown task schema \"" + schema_id + "\"");
    }();
    if (!q) continue;
    if (!seen_ids.insert(q->id).second)
      throw SchemaViolation("duplicate question id \"" + q->id + "\"", line);
    questions.push_back(std::move(*q));
    ++ordinal;
  }
  return questions;
}

std::vector<Question> filter_binary(std::span<const Question> questions) {
  std::vector<Question> out;
  for (const auto& q : questions) {
    if (q.choices.size() != 2) continue;
    std::set<std::string> texts;
    for (const auto& c : q.choices) texts.insert(strings::to_lower(c.text));
    if (texts == std::set<std::string>{"yes", "no"}) out.push_back(q);
  }
  return out;
}

std::vector<Question> sample_eval_set(std::span<const Question> questions, std::size_t n,
                                      std::uint64_t seed) {
  if (questions.size() < n) throw InsufficientQuestions(questions.size(), n);
  std::vector<std::size_t> order(questions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng() % (order.size() - i);
    std::swap(order[i], order[j]);
  }
  std::vector<Question> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(questions[order[i]]);
  return out;
}

std::string to_internal_jsonl(const Question& q) {
  nlohmann::ordered_json j;
  j["id"] = q.id;
  j["task"] = q.task_id;
  j["question"] = q.text;
  j["choices"] = nlohmann::ordered_json::array();
  for (const auto& c : q.choices) j["choices"].push_back(c.text);
  j["gold"] = q.gold_label - 'A';
  return j.dump();
}

}  // namespace faithbench
