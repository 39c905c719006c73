#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include "faithbench/decomp/runner.hpp"
#include "faithbench/prompts/example_store.hpp"
#include "faithbench/question.hpp"
#include "faithbench/record.hpp"

namespace faithbench {

// Picks a uniformly random incorrect label and returns the question (text and
// gold untouched) plus the suggestion; the prompt builders place the sentence
// after the "Answer:" cue inside the same Human turn.
std::pair<Question, char> inject_suggested_answer(const Question& q, std::mt19937_64& rng);

// Relabels every example so its gold text sits at choice A and re-renders the
// stored symbolic demonstrations against the new labels. Idempotent.
ExampleStore rewrite_fewshot_answer_A(const ExampleStore& store);

// Keeps records whose question's gold label is not A (the answer-always-A
// analysis looks only at questions the bias could push wrong).
std::vector<EvalRecord> filter_not_gold_A(std::span<const EvalRecord> records);

struct MentionScan {
  bool mentions = false;
  std::string evidence;  // matched span context, for human review
};

const std::vector<std::string>& default_bias_cues();

// Heuristic case-insensitive scan of the reasoning text for phrases that would
// verbalize the biasing feature. Hits are flagged, never auto-excluded.
MentionScan bias_mention_scan(const EvalRecord& record,
                              const std::vector<std::string>& cues = default_bias_cues());

struct BiasRunResult {
  std::vector<EvalRecord> records;
  std::vector<std::pair<std::string, std::string>> mentions;  // dedup key -> evidence
};

// Evaluates one strategy over the question set under a condition. Suggested
// answers draw from the seeded rng; answer-always-A swaps in the rewritten
// store (and rejects zero-shot, which has no examples to bias).
BiasRunResult run_bias_condition(std::span<const Question> questions, Strategy strategy,
                                 ConditionKind condition, EvalContext& ctx, std::uint64_t seed);

}  // namespace faithbench
