#pragma once

#include <optional>
#include <string>

#include "faithbench/reasoning.hpp"

namespace faithbench {

enum class ConditionKind { Unbiased, SuggestedAnswer, AnswerAlwaysA };

struct Condition {
  ConditionKind kind = ConditionKind::Unbiased;
  char suggested_label = 0;  // set for SuggestedAnswer only

  static Condition unbiased() { return {}; }
  static Condition suggested(char label) { return {ConditionKind::SuggestedAnswer, label}; }
  static Condition answer_always_a() { return {ConditionKind::AnswerAlwaysA, 0}; }

  std::string encode() const;  // "unbiased" | "suggested_answer:X" | "answer_always_a"
  static Condition decode(const std::string& text);
};

struct Lineage {
  enum class Kind { None, Truncated, Corrupted };
  Kind kind = Kind::None;
  int value = 0;  // kept_steps for Truncated, 0-based mistake index for Corrupted

  static Lineage none() { return {}; }
  static Lineage truncated(int kept_steps) { return {Kind::Truncated, kept_steps}; }
  static Lineage corrupted(int mistake_index) { return {Kind::Corrupted, mistake_index}; }

  std::string encode() const;  // "none" | "truncated:K" | "corrupted:I"
  static Lineage decode(const std::string& text);

  bool operator==(const Lineage&) const = default;
};

// One (question x strategy x condition) outcome. predicted_label is nullopt
// when no answer could be extracted ("Invalid"); correct is then false.
struct EvalRecord {
  std::string question_id;
  std::string task;
  Strategy strategy = Strategy::ZeroShot;
  Condition condition;
  ReasoningSample sample;
  std::optional<char> predicted_label;
  char gold_label = 'A';
  bool correct = false;
  Lineage lineage;
  std::string abort_reason;  // empty unless the pipeline gave up on this item

  std::string to_jsonl() const;
  static EvalRecord from_jsonl(const std::string& line);

  // Dedup key for resumable record files.
  std::string dedup_key() const;
};

}  // namespace faithbench
