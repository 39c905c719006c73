#include "faithbench/answer.hpp"

#include "faithbench/strings.hpp"

namespace faithbench {

std::optional<char> parse_final_answer(std::string_view completion) {
  const std::size_t anchor = strings::ifind(completion, "choice (");
  if (anchor == std::string_view::npos) return std::nullopt;
  for (std::size_t i = anchor + 8; i < completion.size(); ++i) {
    char c = completion[i];
    if (c >= 'A' && c <= 'Z') return c;
  }
  return std::nullopt;
}

std::string render_question_block(const Question& q, bool include_answer_cue) {
  std::string out = "Question: " + q.text + "\n\nChoices:";
  for (const auto& choice : q.choices) {
    out += "\n (";
    out += choice.label;
    out += ") ";
    out += choice.text;
  }
  if (include_answer_cue) out += "\n\nAnswer:";
  return out;
}

}  // namespace faithbench
