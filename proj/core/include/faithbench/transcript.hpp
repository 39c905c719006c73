#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace faithbench {

enum class Role { Human, Assistant };

struct Turn {
  Role role;
  std::string text;
};

// Ordered Human/Assistant dialog. Roles strictly alternate and the first turn
// is Human; push() enforces both. Rendering prepends the conversation-start
// token and separates turns with two newlines.
class Transcript {
 public:
  Transcript() = default;

  void push(Role role, std::string text);
  void push_human(std::string text) { push(Role::Human, std::move(text)); }
  void push_assistant(std::string text) { push(Role::Assistant, std::move(text)); }

  const std::vector<Turn>& turns() const { return turns_; }
  bool empty() const { return turns_.empty(); }
  std::size_t size() const { return turns_.size(); }

  std::string render(std::string_view start_token = kConversationStart) const;

  static constexpr std::string_view kConversationStart = "<EOT>";

 private:
  std::vector<Turn> turns_;
};

// A transcript waiting on the model: complete history plus the opening of the
// next Assistant turn (possibly empty). render() leaves the prompt ending
// exactly where the model should continue.
struct OpenPrompt {
  Transcript history;
  std::string assistant_stub;

  std::string render(std::string_view start_token = Transcript::kConversationStart) const;

  // History plus the Assistant turn closed with stub + completion.
  Transcript close(std::string_view completion) const;
};

}  // namespace faithbench
