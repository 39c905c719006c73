#include "faithbench/prompts/example_store.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "faithbench/decomp/tags.hpp"
#include "faithbench/errors.hpp"
#include "faithbench/strings.hpp"

namespace faithbench {

namespace {

using nlohmann::json;

Question question_from_json(const json& j) {
  std::vector<std::string> choices;
  for (const auto& c : j.at("choices")) choices.push_back(c.get<std::string>());
  return make_question(j.at("id").get<std::string>(), j.at("task").get<std::string>(),
                       j.at("question").get<std::string>(), std::move(choices),
                       j.at("gold").get<int>());
}

InstructionPreamble preamble_from_json(const json& j) {
  return {j.at("request").get<std::string>(), j.at("acknowledgment").get<std::string>()};
}

}  // namespace

std::string FewShotExample::render_template(const std::string& text) const {
  std::string out = text;
  for (const auto& [original, current] : label_map) {
    const std::string placeholder = std::string("{{") + original + "}}";
    out = strings::replace_all(out, placeholder, std::string(1, current));
  }
  return out;
}

std::string FewShotExample::rendered_cotd() const {
  if (cotd_blocks.empty()) return render_template(cotd_reasoning);
  std::vector<ChoiceBlock> ordered = cotd_blocks;
  std::sort(ordered.begin(), ordered.end(), [&](const ChoiceBlock& a, const ChoiceBlock& b) {
    return label_map.at(a.choice) < label_map.at(b.choice);
  });
  std::vector<std::string> parts;
  parts.reserve(ordered.size());
  for (const auto& block : ordered) parts.push_back(render_template(block.text));
  return strings::join(parts, "\n") + "\n" + std::string(kFinToken);
}

ExampleStore ExampleStore::from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExampleStore store;
  const auto& instructions = j.at("instructions");
  store.cotd_ = preamble_from_json(instructions.at("cotd"));
  store.fd_decomposition_ = preamble_from_json(instructions.at("fd_decomposition"));
  store.fd_subanswer_ = preamble_from_json(instructions.at("fd_subanswer"));
  store.fd_recomposition_ = preamble_from_json(instructions.at("fd_recomposition"));
  for (const auto& demo : instructions.at("fd_subanswer").at("demos")) {
    store.subanswer_demos_.push_back(
        {demo.at("question").get<std::string>(), demo.at("response").get<std::string>()});
  }

  for (const auto& item : j.at("examples")) {
    FewShotExample ex;
    ex.question = question_from_json(item.at("question"));
    for (char label : ex.question.labels()) ex.label_map[label] = label;
    ex.direct_answer = item.at("direct_answer").get<std::string>();
    ex.cot_reasoning = item.at("cot").at("reasoning").get<std::string>();
    ex.cot_answer = item.at("cot").at("answer").get<std::string>();
    const auto& cotd = item.at("cotd");
    if (cotd.contains("choice_blocks")) {
      for (const auto& block : cotd.at("choice_blocks")) {
        ex.cotd_blocks.push_back({block.at("choice").get<std::string>().at(0),
                                  block.at("text").get<std::string>()});
      }
    } else {
      ex.cotd_reasoning = cotd.at("reasoning").get<std::string>();
    }
    ex.cotd_answer = cotd.at("answer").get<std::string>();
    const auto& fd = item.at("factored");
    for (const auto& turn : fd.at("decomposition_turns")) {
      ex.fd_decomposition_turns.push_back(turn.get<std::string>());
    }
    ex.fd_recomposition_evidence = fd.at("recomposition_evidence").get<std::string>();
    ex.fd_answer = fd.at("answer").get<std::string>();
    store.examples_.push_back(std::move(ex));
  }
  store.validate();
  return store;
}

ExampleStore ExampleStore::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open example store " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

ExampleStore ExampleStore::first(std::size_t n) const {
  ExampleStore out = *this;
  if (n < out.examples_.size()) out.examples_.resize(n);
  return out;
}

void ExampleStore::validate() const {
  if (examples_.empty()) throw Error("example store has no examples");
  for (const auto& ex : examples_) {
    const std::string& id = ex.question.id;
    if (ex.direct_answer.empty() || ex.cot_answer.empty() || ex.cotd_answer.empty() ||
        ex.fd_answer.empty() || ex.cot_reasoning.empty())
      throw Error("example " + id + " is missing a strategy demonstration");
    if (ex.fd_decomposition_turns.empty() || ex.fd_recomposition_evidence.empty())
      throw Error("example " + id + " is missing factored demonstrations");

    // Tagged demonstrations must parse under the decomposition grammar.
    const std::string cotd = ex.rendered_cotd();
    if (parse_cotd(cotd).empty())
      throw Error("example " + id + ": cotd demonstration parses to zero pairs");
    if (!strings::contains(cotd, std::string(kFinToken)))
      throw Error("example " + id + ": cotd demonstration lacks the terminator");
    for (std::size_t i = 0; i < ex.fd_decomposition_turns.size(); i += 2) {
      const SlotParse parsed = parse_slots(ex.fd_decomposition_turns[i]);
      const bool last = i + 1 >= ex.fd_decomposition_turns.size();
      if (last && !parsed.finished)
        throw Error("example " + id + ": factored dialog does not end with the terminator");
      if (!last && parsed.slots.empty())
        throw Error("example " + id + ": factored round " + std::to_string(i / 2 + 1) +
                    " contains no slots");
    }
  }
}

}  // namespace faithbench
