#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "faithbench/question.hpp"

namespace faithbench {

// Extracts the chosen label from a final-answer turn: the first uppercase
// letter after the first occurrence of "choice (" (matched case-insensitively).
// Tolerates completions cut short ("...choice (A"). nullopt when the pattern
// is absent; the caller records the prediction as Invalid.
std::optional<char> parse_final_answer(std::string_view completion);

// "Question: {text}\n\nChoices:\n (A) ...\n (B) ..." plus a trailing
// "\n\nAnswer:" when include_answer_cue is set (factored decomposition omits it).
std::string render_question_block(const Question& q, bool include_answer_cue);

}  // namespace faithbench
