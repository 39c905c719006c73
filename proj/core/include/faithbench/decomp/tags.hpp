#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "faithbench/reasoning.hpp"

namespace faithbench {

// Tag grammar (bit-exact): <sub_q>...</sub_q>, <sub_a>...</sub_a>,
// <sub_q_N>...</sub_q_N>, <sub_a_N>...</sub_a_N> (empty-bodied form is a
// reference placeholder), <result>...</result>, terminator <FIN></FIN>.
inline constexpr std::string_view kFinToken = "<FIN></FIN>";

// One indexed subquestion slot from a decomposition round. unresolved_refs
// holds exactly the placeholder indices embedded in the text.
struct SubquestionSlot {
  int index = 0;
  std::string text;
  std::set<int> unresolved_refs;

  bool operator==(const SubquestionSlot&) const = default;
};

struct SlotParse {
  bool finished = false;
  std::vector<SubquestionSlot> slots;
};

struct ResultParse {
  bool unknown = false;
  std::string answer;  // empty when unknown
};

// Ordered (subquestion, subanswer) pairs from alternating <sub_q>/<sub_a>
// blocks; content trimmed; parsing stops at <FIN></FIN>. Throws MalformedTags
// when a subquestion lacks its answer or tags nest/overlap.
std::vector<QAPairStep> parse_cotd(std::string_view text);

// Indexed slots, or the Finished signal when the text contains <FIN></FIN>.
// Throws MalformedTags on unclosed or duplicate-index tags.
SlotParse parse_slots(std::string_view text);

// Content of the first <result> block; "Unknown" (case-insensitive, trimmed)
// maps to the unknown signal. Throws MalformedTags when no block exists.
ResultParse parse_result(std::string_view text);

// Canonical renderers; parse(render(x)) == x.
std::string render_cotd(const std::vector<QAPairStep>& pairs);  // ends with <FIN></FIN>
std::string render_slots(const std::vector<SubquestionSlot>& slots);
std::string render_result(const ResultParse& result);

// Harness-side fallback substitution: placeholders remaining in a slot's text
// are replaced by the raw resolved answer strings. Throws UnresolvedReference
// when a placeholder's index has no answer. The model normally re-emits slots
// already substituted, in which case this is the identity.
std::string substitute_refs(const SubquestionSlot& slot, const std::map<int, std::string>& resolved);

}  // namespace faithbench
