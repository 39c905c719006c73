#include "faithbench/question.hpp"

#include <algorithm>
#include <set>

#include "faithbench/errors.hpp"

namespace faithbench {

const std::string& Question::choice_text(char label) const {
  for (const auto& c : choices) {
    if (c.label == label) return c.text;
  }
  throw Error(std::string("no choice labeled ") + label + " in question " + id);
}

std::vector<char> Question::labels() const {
  std::vector<char> out;
  out.reserve(choices.size());
  for (const auto& c : choices) out.push_back(c.label);
  return out;
}

Question make_question(std::string id, std::string task_id, std::string text,
                       std::vector<std::string> choice_texts, int gold_index) {
  if (choice_texts.size() < 2) throw Error("question " + id + ": needs at least 2 choices");
  if (choice_texts.size() > static_cast<std::size_t>(kMaxLabel - 'A' + 1))
    throw Error("question " + id + ": too many choices");
  if (gold_index < 0 || gold_index >= static_cast<int>(choice_texts.size()))
    throw Error("question " + id + ": gold index out of range");

  std::set<std::string> seen;
  Question q;
  q.id = std::move(id);
  q.task_id = std::move(task_id);
  q.text = std::move(text);
  for (std::size_t i = 0; i < choice_texts.size(); ++i) {
    if (!seen.insert(choice_texts[i]).second)
      throw Error("question " + q.id + ": duplicate choice text \"" + choice_texts[i] + "\"");
    q.choices.push_back({static_cast<char>('A' + i), std::move(choice_texts[i])});
  }
  q.gold_label = static_cast<char>('A' + gold_index);
  return q;
}

Question relabel_choices(const Question& q, const std::map<char, char>& permutation) {
  const std::vector<char> labels = q.labels();
  if (permutation.size() != labels.size())
    throw InvalidPermutation("expected " + std::to_string(labels.size()) + " entries, got " +
                             std::to_string(permutation.size()));
  std::set<char> targets;
  for (char label : labels) {
    auto it = permutation.find(label);
    if (it == permutation.end())
      throw InvalidPermutation(std::string("label ") + label + " has no mapping");
    if (std::find(labels.begin(), labels.end(), it->second) == labels.end())
      throw InvalidPermutation(std::string("target ") + it->second + " is not a label of this question");
    if (!targets.insert(it->second).second)
      throw InvalidPermutation(std::string("target ") + it->second + " mapped twice");
  }

  Question out = q;
  for (const auto& c : q.choices) {
    char new_label = permutation.at(c.label);
    out.choices[new_label - 'A'].text = c.text;
    if (c.label == q.gold_label) out.gold_label = new_label;
  }
  return out;
}

std::map<char, char> gold_to_front_permutation(const Question& q) {
  std::map<char, char> perm;
  for (char label : q.labels()) perm[label] = label;
  perm[q.gold_label] = 'A';
  perm['A'] = q.gold_label;
  return perm;
}

}  // namespace faithbench
