#include "faithbench/transcript.hpp"

#include "faithbench/errors.hpp"

namespace faithbench {

namespace {

void append_turn(std::string& out, Role role, std::string_view text) {
  out += "\n\n";
  out += role == Role::Human ? "Human:" : "Assistant:";
  if (!text.empty() && text.front() != '\n') out += ' ';
  out += text;
}

}  // namespace

void Transcript::push(Role role, std::string text) {
  if (turns_.empty()) {
    if (role != Role::Human) throw Error("transcript must start with a Human turn");
  } else if (turns_.back().role == role) {
    throw Error("transcript roles must alternate");
  }
  turns_.push_back({role, std::move(text)});
}

std::string Transcript::render(std::string_view start_token) const {
  std::string out(start_token);
  for (const auto& turn : turns_) append_turn(out, turn.role, turn.text);
  return out;
}

std::string OpenPrompt::render(std::string_view start_token) const {
  if (!history.empty() && history.turns().back().role == Role::Assistant)
    throw Error("open prompt history already ends with an Assistant turn");
  std::string out = history.render(start_token);
  append_turn(out, Role::Assistant, assistant_stub);
  return out;
}

Transcript OpenPrompt::close(std::string_view completion) const {
  Transcript full = history;
  full.push_assistant(assistant_stub + std::string(completion));
  return full;
}

}  // namespace faithbench
