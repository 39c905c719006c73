#include <doctest.h>

#include <random>

#include "faithbench/decomp/tags.hpp"
#include "faithbench/errors.hpp"

using namespace faithbench;

TEST_CASE("parse_cotd extracts ordered pairs and trims content") {
  const std::string text =
      "\n<sub_q> When was the band The Shins formed?</sub_q>\n"
      "<sub_a>The Shins were formed in 1996.</sub_a>\n\n"
      "<sub_q>When was the band Paramore formed?</sub_q>\n"
      "<sub_a>Paramore was formed in 2004.</sub_a>\n\n"
      "<FIN></FIN>";
  const auto pairs = parse_cotd(text);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].subquestion == "When was the band The Shins formed?");
  CHECK(pairs[0].subanswer == "The Shins were formed in 1996.");
  CHECK(pairs[1].subquestion == "When was the band Paramore formed?");
}

TEST_CASE("parse_cotd edge cases") {
  CHECK(parse_cotd("<FIN></FIN>").empty());
  CHECK_THROWS_AS(parse_cotd("<sub_q>Q?</sub_q>"), MalformedTags);
  CHECK_THROWS_AS(parse_cotd("<sub_q>Q?<sub_a>a</sub_a></sub_q>"), MalformedTags);
  CHECK_THROWS_AS(parse_cotd("<sub_q></sub_q>\n<sub_a>a</sub_a>"), MalformedTags);
  // Pairs after the terminator are ignored.
  CHECK(parse_cotd("<FIN></FIN><sub_q>Q?</sub_q><sub_a>a</sub_a>").empty());
}

TEST_CASE("parse_slots on the first-round decomposition of the maiden-name question") {
  const std::string text =
      "\n<sub_q_1>Which NBA player has the all-time scoring record?</sub_q_1>\n"
      "<sub_q_2>Who is the wife of <sub_a_1></sub_a_1>?</sub_q_2>\n"
      "<sub_q_3>What is the maiden name of <sub_a_2></sub_a_2>?</sub_q_3>";
  const SlotParse parsed = parse_slots(text);
  CHECK_FALSE(parsed.finished);
  REQUIRE(parsed.slots.size() == 3);
  CHECK(parsed.slots[0].index == 1);
  CHECK(parsed.slots[0].unresolved_refs.empty());
  CHECK(parsed.slots[1].unresolved_refs == std::set<int>{1});
  CHECK(parsed.slots[2].unresolved_refs == std::set<int>{2});
}

TEST_CASE("parse_slots handles multi-reference and self-reference slots") {
  const std::string text =
      "<sub_q_1>What are the prime numbers between 1 and 10?</sub_q_1>\n"
      "<sub_q_2>What is the largest number in <sub_a_2></sub_a_2>?</sub_q_2>\n"
      "<sub_q_3>What are the odd numbers between 1 and 10?</sub_q_3>\n"
      "<sub_q_4>What is the largest number in <sub_a_3></sub_a_3>?</sub_q_4>\n"
      "<sub_q_5>What is the sum of <sub_a_2></sub_a_2> and <sub_a_4></sub_a_4>?</sub_q_5>";
  const SlotParse parsed = parse_slots(text);
  REQUIRE(parsed.slots.size() == 5);
  CHECK(parsed.slots[4].unresolved_refs == std::set<int>{2, 4});
  CHECK(parsed.slots[1].unresolved_refs == std::set<int>{2});  // verbatim self-reference
  CHECK(parsed.slots[2].unresolved_refs.empty());
}

TEST_CASE("parse_slots returns the finished signal on the terminator") {
  CHECK(parse_slots("<FIN></FIN>").finished);
  CHECK(parse_slots("\n<FIN></FIN>").finished);
  // The terminator wins even when slots are present.
  CHECK(parse_slots("<sub_q_1>x</sub_q_1>\n<FIN></FIN>").finished);
}

TEST_CASE("parse_slots malformed inputs") {
  CHECK_THROWS_AS(parse_slots("<sub_q_1>unclosed"), MalformedTags);
  CHECK_THROWS_AS(parse_slots("<sub_q_1>a</sub_q_1><sub_q_1>b</sub_q_1>"), MalformedTags);
  CHECK_THROWS_AS(parse_slots("<sub_q_>no index</sub_q_>"), MalformedTags);
  CHECK_THROWS_AS(parse_slots("<sub_q_0>zero</sub_q_0>"), MalformedTags);
  CHECK_THROWS_AS(parse_slots("<sub_q_1>a<sub_q_2>b</sub_q_2></sub_q_1>"), MalformedTags);
}

TEST_CASE("parse_result extracts the first block") {
  const ResultParse tall = parse_result("<result>984 feet, or 1083 feet to the tip</result>");
  CHECK_FALSE(tall.unknown);
  CHECK(tall.answer == "984 feet, or 1083 feet to the tip");

  CHECK(parse_result("<result>Unknown</result>").unknown);
  CHECK(parse_result("<result> unknown </result>").unknown);
  CHECK_THROWS_AS(parse_result("The answer is 7."), MalformedTags);
  CHECK_THROWS_AS(parse_result("<result>cut off"), MalformedTags);

  const ResultParse with_reasoning =
      parse_result("Let's think step by step:\n\n1. ...\n\n<result>2</result>");
  CHECK(with_reasoning.answer == "2");
}

TEST_CASE("substitute_refs replaces placeholders with raw answers") {
  SubquestionSlot slot;
  slot.index = 2;
  slot.text = "Who is the wife of <sub_a_1></sub_a_1>?";
  slot.unresolved_refs = {1};
  const std::map<int, std::string> resolved{{1, "LeBron James has the all-time scoring record."}};
  CHECK(substitute_refs(slot, resolved) ==
        "Who is the wife of LeBron James has the all-time scoring record.?");

  SubquestionSlot plain;
  plain.index = 1;
  plain.text = "No placeholders here.";
  CHECK(substitute_refs(plain, {}) == "No placeholders here.");

  SubquestionSlot missing;
  missing.index = 3;
  missing.text = "Needs <sub_a_9></sub_a_9>.";
  missing.unresolved_refs = {9};
  CHECK_THROWS_AS(substitute_refs(missing, resolved), UnresolvedReference);
}

namespace {

std::string random_content(std::mt19937_64& rng) {
  static const char* words[] = {"alpha", "beta",  "gamma", "delta", "list 1, 2, 3",
                                "what",  "which", "when",  "17",    "the largest"};
  std::string out;
  const int n = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += words[rng() % std::size(words)];
  }
  return out;
}

}  // namespace

TEST_CASE("parse/render round-trips are fixed points on random documents") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    // cotd pairs
    std::vector<QAPairStep> pairs;
    const int n_pairs = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n_pairs; ++i) {
      pairs.push_back({random_content(rng) + "?", random_content(rng) + "."});
    }
    const auto pairs_back = parse_cotd(render_cotd(pairs));
    REQUIRE(pairs_back.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      CHECK(pairs_back[i].subquestion == pairs[i].subquestion);
      CHECK(pairs_back[i].subanswer == pairs[i].subanswer);
    }

    // indexed slots with random reference placeholders
    std::vector<SubquestionSlot> slots;
    const int n_slots = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n_slots; ++i) {
      SubquestionSlot slot;
      slot.index = i + 1;
      slot.text = random_content(rng);
      if (i > 0 && rng() % 2 == 0) {
        const int ref = 1 + static_cast<int>(rng() % i);
        slot.text += " <sub_a_" + std::to_string(ref) + "></sub_a_" + std::to_string(ref) + ">?";
        slot.unresolved_refs.insert(ref);
      }
      slots.push_back(std::move(slot));
    }
    const SlotParse slots_back = parse_slots(render_slots(slots));
    REQUIRE(slots_back.slots.size() == slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      CHECK(slots_back.slots[i] == slots[i]);
    }

    // result blocks
    const ResultParse result{rng() % 4 == 0, ""};
    const ResultParse realized =
        result.unknown ? result : ResultParse{false, random_content(rng)};
    const ResultParse back = parse_result(render_result(realized));
    CHECK(back.unknown == realized.unknown);
    CHECK(back.answer == realized.answer);
  }
}
