#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "faithbench/question.hpp"
#include "faithbench/reasoning.hpp"

namespace faithbench {

struct InstructionPreamble {
  std::string request;
  std::string acknowledgment;
};

struct SubanswerDemo {
  std::string question;
  std::string response;
};

// A demonstration fragment tied to one answer choice; blocks are re-ordered
// when choices are relabeled so reasoning that walks the options stays aligned
// with the displayed order.
struct ChoiceBlock {
  char choice = 'A';  // original label
  std::string text;
};

// One shared demonstration question with per-strategy reasoning. Choice
// references inside demonstration text are symbolic ("{{C}}" = current label
// of the choice originally labeled C) so relabeling re-renders consistently.
struct FewShotExample {
  Question question;
  std::map<char, char> label_map;  // original label -> current label

  std::string direct_answer;
  std::string cot_reasoning;
  std::string cot_answer;
  std::string cotd_reasoning;            // verbatim, ends with <FIN></FIN>
  std::vector<ChoiceBlock> cotd_blocks;  // alternative per-choice form
  std::string cotd_answer;
  std::vector<std::string> fd_decomposition_turns;  // Assistant-first bodies
  std::string fd_recomposition_evidence;
  std::string fd_answer;

  std::string render_template(const std::string& text) const;
  std::string rendered_cotd() const;  // resolves blocks or verbatim text
};

class ExampleStore {
 public:
  static ExampleStore load(const std::filesystem::path& path);
  static ExampleStore from_json_text(const std::string& text);

  const std::vector<FewShotExample>& examples() const { return examples_; }
  std::vector<FewShotExample>& examples() { return examples_; }
  bool empty() const { return examples_.empty(); }
  std::size_t size() const { return examples_.size(); }

  // A store restricted to the first n examples (prompt-size control and the
  // published-prompt goldens, which carry the first three).
  ExampleStore first(std::size_t n) const;

  const InstructionPreamble& cotd_instructions() const { return cotd_; }
  const InstructionPreamble& fd_decomposition_instructions() const { return fd_decomposition_; }
  const InstructionPreamble& fd_subanswer_instructions() const { return fd_subanswer_; }
  const InstructionPreamble& fd_recomposition_instructions() const { return fd_recomposition_; }
  const std::vector<SubanswerDemo>& subanswer_demos() const { return subanswer_demos_; }

  // Checks that every example carries every strategy's demonstration and that
  // tagged demonstrations parse under the decomposition grammar.
  void validate() const;

 private:
  std::vector<FewShotExample> examples_;
  InstructionPreamble cotd_;
  InstructionPreamble fd_decomposition_;
  InstructionPreamble fd_subanswer_;
  InstructionPreamble fd_recomposition_;
  std::vector<SubanswerDemo> subanswer_demos_;
};

}  // namespace faithbench
