#include "faithbench/reasoning.hpp"

#include "faithbench/errors.hpp"
#include "faithbench/strings.hpp"

namespace faithbench {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::ZeroShot: return "zero_shot";
    case Strategy::FewShot: return "few_shot";
    case Strategy::CoT: return "cot";
    case Strategy::CoTDecomp: return "cot_decomp";
    case Strategy::Factored: return "factored";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "zero_shot") return Strategy::ZeroShot;
  if (name == "few_shot") return Strategy::FewShot;
  if (name == "cot") return Strategy::CoT;
  if (name == "cot_decomp") return Strategy::CoTDecomp;
  if (name == "factored") return Strategy::Factored;
  throw Error("unknown strategy \"" + name + "\"");
}

bool strategy_uses_examples(Strategy s) { return s != Strategy::ZeroShot; }

bool strategy_has_reasoning(Strategy s) {
  return s == Strategy::CoT || s == Strategy::CoTDecomp || s == Strategy::Factored;
}

bool is_free_text(const ReasoningStep& step) {
  return std::holds_alternative<FreeTextStep>(step);
}

bool is_qa_pair(const ReasoningStep& step) {
  return std::holds_alternative<QAPairStep>(step);
}

void ReasoningSample::validate() const {
  switch (strategy) {
    case Strategy::ZeroShot:
    case Strategy::FewShot:
      if (!steps.empty()) throw Error("direct-answer samples must not carry steps");
      return;
    case Strategy::CoT:
      for (const auto& step : steps) {
        if (!is_free_text(step)) throw Error("cot sample contains a non-free-text step");
        if (strings::trim(std::get<FreeTextStep>(step).text).empty())
          throw Error("cot sample contains an empty step");
      }
      return;
    case Strategy::CoTDecomp:
    case Strategy::Factored:
      for (const auto& step : steps) {
        if (!is_qa_pair(step)) throw Error("decomposition sample contains a non-qa step");
        const auto& pair = std::get<QAPairStep>(step);
        if (pair.subquestion.empty() || pair.subanswer.empty())
          throw Error("decomposition sample contains an empty pair field");
      }
      return;
  }
}

}  // namespace faithbench
