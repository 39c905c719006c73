#include "faithbench/decomp/tags.hpp"

#include <algorithm>

#include "faithbench/errors.hpp"
#include "faithbench/strings.hpp"

namespace faithbench {

namespace {

constexpr std::string_view kSubQOpen = "<sub_q>";
constexpr std::string_view kSubQClose = "</sub_q>";
constexpr std::string_view kSubAOpen = "<sub_a>";
constexpr std::string_view kSubAClose = "</sub_a>";

enum class Tok { QOpen, QClose, AOpen, AClose };

struct Token {
  Tok kind;
  std::size_t pos;
  std::size_t end;
};

// Collects every occurrence of the four plain-pair tags in positional order.
// "<sub_q>" never matches the indexed form "<sub_q_N>".
std::vector<Token> tokenize_pairs(std::string_view text) {
  std::vector<Token> tokens;
  auto scan = [&](std::string_view literal, Tok kind) {
    std::size_t pos = 0;
    while ((pos = text.find(literal, pos)) != std::string_view::npos) {
      tokens.push_back({kind, pos, pos + literal.size()});
      pos += literal.size();
    }
  };
  scan(kSubQOpen, Tok::QOpen);
  scan(kSubQClose, Tok::QClose);
  scan(kSubAOpen, Tok::AOpen);
  scan(kSubAClose, Tok::AClose);
  std::sort(tokens.begin(), tokens.end(),
            [](const Token& a, const Token& b) { return a.pos < b.pos; });
  return tokens;
}

std::optional<int> read_index(std::string_view text, std::size_t& pos) {
  std::size_t i = pos;
  if (i >= text.size() || text[i] < '0' || text[i] > '9') return std::nullopt;
  long value = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    value = value * 10 + (text[i] - '0');
    if (value > 1'000'000) return std::nullopt;
    ++i;
  }
  pos = i;
  return static_cast<int>(value);
}

}  // namespace

std::vector<QAPairStep> parse_cotd(std::string_view text) {
  if (const std::size_t fin = text.find(kFinToken); fin != std::string_view::npos) {
    text = text.substr(0, fin);
  }
  const std::vector<Token> tokens = tokenize_pairs(text);

  std::vector<QAPairStep> pairs;
  static constexpr Tok expect[4] = {Tok::QOpen, Tok::QClose, Tok::AOpen, Tok::AClose};
  if (tokens.size() % 4 != 0) throw MalformedTags("unbalanced <sub_q>/<sub_a> sequence");
  for (std::size_t i = 0; i < tokens.size(); i += 4) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (tokens[i + j].kind != expect[j])
        throw MalformedTags("tags out of order near offset " + std::to_string(tokens[i + j].pos));
    }
    QAPairStep pair;
    pair.subquestion = strings::trim(
        text.substr(tokens[i].end, tokens[i + 1].pos - tokens[i].end));
    pair.subanswer = strings::trim(
        text.substr(tokens[i + 2].end, tokens[i + 3].pos - tokens[i + 2].end));
    if (pair.subquestion.empty()) throw MalformedTags("empty subquestion");
    if (pair.subanswer.empty()) throw MalformedTags("empty subanswer");
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

SlotParse parse_slots(std::string_view text) {
  if (text.find(kFinToken) != std::string_view::npos) return {.finished = true, .slots = {}};

  SlotParse out;
  std::set<int> seen;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("<sub_q_", pos);
    if (open == std::string_view::npos) break;
    std::size_t cursor = open + 7;
    const auto index = read_index(text, cursor);
    if (!index || cursor >= text.size() || text[cursor] != '>')
      throw MalformedTags("bad <sub_q_N> open tag at offset " + std::to_string(open));
    ++cursor;  // past '>'
    const std::string close_tag = "</sub_q_" + std::to_string(*index) + ">";
    const std::size_t close = text.find(close_tag, cursor);
    if (close == std::string_view::npos)
      throw MalformedTags("unclosed <sub_q_" + std::to_string(*index) + ">");
    std::string_view body = text.substr(cursor, close - cursor);
    if (body.find("<sub_q_") != std::string_view::npos)
      throw MalformedTags("nested subquestion tags in slot " + std::to_string(*index));
    if (!seen.insert(*index).second)
      throw MalformedTags("duplicate slot index " + std::to_string(*index));
    if (*index < 1) throw MalformedTags("slot index must be positive");

    SubquestionSlot slot;
    slot.index = *index;
    slot.text = strings::trim(body);
    // Reference placeholders are exactly the empty-bodied <sub_a_j></sub_a_j> forms.
    std::size_t ref_pos = 0;
    while (true) {
      const std::size_t ref = slot.text.find("<sub_a_", ref_pos);
      if (ref == std::string::npos) break;
      std::size_t ref_cursor = ref + 7;
      const auto ref_index = read_index(slot.text, ref_cursor);
      if (ref_index && ref_cursor < slot.text.size() && slot.text[ref_cursor] == '>') {
        const std::string ref_close = "</sub_a_" + std::to_string(*ref_index) + ">";
        if (slot.text.compare(ref_cursor + 1, ref_close.size(), ref_close) == 0) {
          slot.unresolved_refs.insert(*ref_index);
          ref_pos = ref_cursor + 1 + ref_close.size();
          continue;
        }
      }
      ref_pos = ref + 7;
    }
    out.slots.push_back(std::move(slot));
    pos = close + close_tag.size();
  }
  return out;
}

ResultParse parse_result(std::string_view text) {
  const std::size_t open = text.find("<result>");
  if (open == std::string_view::npos) throw MalformedTags("no <result> block");
  const std::size_t body_start = open + 8;
  const std::size_t close = text.find("</result>", body_start);
  if (close == std::string_view::npos) throw MalformedTags("unclosed <result> block");
  std::string content = strings::trim(text.substr(body_start, close - body_start));
  if (strings::to_lower(content) == "unknown") return {.unknown = true, .answer = {}};
  return {.unknown = false, .answer = std::move(content)};
}

std::string render_cotd(const std::vector<QAPairStep>& pairs) {
  std::vector<std::string> chunks;
  chunks.reserve(pairs.size() + 1);
  for (const auto& pair : pairs) {
    chunks.push_back("<sub_q>" + pair.subquestion + "</sub_q>\n<sub_a>" + pair.subanswer +
                     "</sub_a>");
  }
  chunks.push_back(std::string(kFinToken));
  return strings::join(chunks, "\n\n");
}

std::string render_slots(const std::vector<SubquestionSlot>& slots) {
  std::vector<std::string> lines;
  lines.reserve(slots.size());
  for (const auto& slot : slots) {
    const std::string n = std::to_string(slot.index);
    lines.push_back("<sub_q_" + n + ">" + slot.text + "</sub_q_" + n + ">");
  }
  return strings::join(lines, "\n");
}

std::string render_result(const ResultParse& result) {
  return "<result>" + (result.unknown ? std::string("Unknown") : result.answer) + "</result>";
}

std::string substitute_refs(const SubquestionSlot& slot,
                            const std::map<int, std::string>& resolved) {
  std::string out = slot.text;
  for (int index : slot.unresolved_refs) {
    const auto it = resolved.find(index);
    if (it == resolved.end()) throw UnresolvedReference(index);
    const std::string placeholder =
        "<sub_a_" + std::to_string(index) + "></sub_a_" + std::to_string(index) + ">";
    out = strings::replace_all(out, placeholder, it->second);
  }
  return out;
}

}  // namespace faithbench
