#pragma once

#include <string>
#include <variant>
#include <vector>

namespace faithbench {

enum class Strategy { ZeroShot, FewShot, CoT, CoTDecomp, Factored };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);
bool strategy_uses_examples(Strategy s);   // all but zero-shot
bool strategy_has_reasoning(Strategy s);   // cot, cot_decomp, factored

struct FreeTextStep {
  std::string text;  // non-empty after trimming
};

struct QAPairStep {
  std::string subquestion;  // non-empty
  std::string subanswer;    // non-empty
};

using ReasoningStep = std::variant<FreeTextStep, QAPairStep>;

bool is_free_text(const ReasoningStep& step);
bool is_qa_pair(const ReasoningStep& step);

// One sampled reasoning trace. Zero/few-shot samples have no steps; CoT steps
// are all FreeText; decomposition strategies carry QAPairs only. validate()
// checks that variant constraint.
struct ReasoningSample {
  Strategy strategy = Strategy::ZeroShot;
  std::vector<ReasoningStep> steps;
  std::string raw;  // verbatim model text the steps were parsed from

  void validate() const;  // throws Error on a variant violation
};

}  // namespace faithbench
