#pragma once

#include <map>
#include <string>
#include <vector>

namespace faithbench {

struct Choice {
  char label = 'A';  // single uppercase letter, consecutive from 'A'
  std::string text;
};

// One multiple-choice item. Construct through make_question() which enforces
// the invariants (consecutive labels from A, >=2 pairwise-distinct choices,
// gold label present).
struct Question {
  std::string id;
  std::string task_id;
  std::string text;
  std::vector<Choice> choices;
  char gold_label = 'A';

  const std::string& choice_text(char label) const;
  std::vector<char> labels() const;
  const std::string& gold_text() const { return choice_text(gold_label); }
};

// Labels beyond 'H' are rejected; no task in scope exceeds five choices.
inline constexpr char kMaxLabel = 'H';

Question make_question(std::string id, std::string task_id, std::string text,
                       std::vector<std::string> choice_texts, int gold_index);

// Reorders choice texts so that each text originally at `old_label` sits at
// permutation.at(old_label); the gold label follows its text. Throws
// InvalidPermutation unless the mapping is a bijection over the question's labels.
Question relabel_choices(const Question& q, const std::map<char, char>& permutation);

// Convenience: the permutation that swaps the gold text into position 'A'.
std::map<char, char> gold_to_front_permutation(const Question& q);

}  // namespace faithbench
