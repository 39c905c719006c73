#include "faithbench/record.hpp"

#include <nlohmann/json.hpp>

#include "faithbench/errors.hpp"

namespace faithbench {

using ordered_json = nlohmann::ordered_json;

std::string Condition::encode() const {
  switch (kind) {
    case ConditionKind::Unbiased: return "unbiased";
    case ConditionKind::SuggestedAnswer: return std::string("suggested_answer:") + suggested_label;
    case ConditionKind::AnswerAlwaysA: return "answer_always_a";
  }
  return "unbiased";
}

Condition Condition::decode(const std::string& text) {
  if (text == "unbiased") return unbiased();
  if (text == "answer_always_a") return answer_always_a();
  if (text.rfind("suggested_answer:", 0) == 0 && text.size() == 18) return suggested(text[17]);
  throw Error("unknown condition \"" + text + "\"");
}

std::string Lineage::encode() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Truncated: return "truncated:" + std::to_string(value);
    case Kind::Corrupted: return "corrupted:" + std::to_string(value);
  }
  return "none";
}

Lineage Lineage::decode(const std::string& text) {
  if (text == "none") return none();
  if (text.rfind("truncated:", 0) == 0) return truncated(std::stoi(text.substr(10)));
  if (text.rfind("corrupted:", 0) == 0) return corrupted(std::stoi(text.substr(10)));
  throw Error("unknown lineage \"" + text + "\"");
}

std::string EvalRecord::to_jsonl() const {
  ordered_json steps = ordered_json::array();
  for (const auto& step : sample.steps) {
    if (is_free_text(step)) {
      steps.push_back({{"kind", "free_text"}, {"text", std::get<FreeTextStep>(step).text}});
    } else {
      const auto& pair = std::get<QAPairStep>(step);
      steps.push_back({{"kind", "qa_pair"},
                       {"subquestion", pair.subquestion},
                       {"subanswer", pair.subanswer}});
    }
  }
  ordered_json j{{"question_id", question_id},
                 {"task", task},
                 {"strategy", to_string(strategy)},
                 {"condition", condition.encode()},
                 {"lineage", lineage.encode()},
                 {"raw_reasoning", sample.raw},
                 {"steps", std::move(steps)},
                 {"predicted", predicted_label ? std::string(1, *predicted_label) : "invalid"},
                 {"gold", std::string(1, gold_label)},
                 {"correct", correct},
                 {"abort_reason", abort_reason}};
  return j.dump();
}

EvalRecord EvalRecord::from_jsonl(const std::string& line) {
  ordered_json j = ordered_json::parse(line);
  EvalRecord r;
  r.question_id = j.at("question_id").get<std::string>();
  r.task = j.at("task").get<std::string>();
  r.strategy = strategy_from_string(j.at("strategy").get<std::string>());
  r.condition = Condition::decode(j.at("condition").get<std::string>());
  r.lineage = Lineage::decode(j.at("lineage").get<std::string>());
  r.sample.strategy = r.strategy;
  r.sample.raw = j.at("raw_reasoning").get<std::string>();
  for (const auto& step : j.at("steps")) {
    const auto kind = step.at("kind").get<std::string>();
    if (kind == "free_text") {
      r.sample.steps.emplace_back(FreeTextStep{step.at("text").get<std::string>()});
    } else if (kind == "qa_pair") {
      r.sample.steps.emplace_back(QAPairStep{step.at("subquestion").get<std::string>(),
                                             step.at("subanswer").get<std::string>()});
    } else {
      throw Error("unknown step kind \"" + kind + "\"");
    }
  }
  const auto predicted = j.at("predicted").get<std::string>();
  if (predicted != "invalid") {
    if (predicted.size() != 1) throw Error("bad predicted label \"" + predicted + "\"");
    r.predicted_label = predicted[0];
  }
  r.gold_label = j.at("gold").get<std::string>().at(0);
  r.correct = j.at("correct").get<bool>();
  r.abort_reason = j.at("abort_reason").get<std::string>();
  return r;
}

std::string EvalRecord::dedup_key() const {
  return question_id + "|" + to_string(strategy) + "|" + condition.encode() + "|" +
         lineage.encode();
}

}  // namespace faithbench
