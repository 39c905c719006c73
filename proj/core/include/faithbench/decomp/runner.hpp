#pragma once

#include <string_view>

#include "faithbench/decomp/factored.hpp"
#include "faithbench/gateway/gateway.hpp"
#include "faithbench/prompts/builders.hpp"
#include "faithbench/record.hpp"

namespace faithbench {

// Everything a strategy run needs, bundled so pipelines stay one call wide.
struct EvalContext {
  ModelGateway& gateway;
  const ExampleStore& store;
  PromptOptions prompts;
  SamplingConfig sampling;
  FactoredConfig factored;
};

// Free-text reasoning split into steps on blank lines.
std::vector<ReasoningStep> parse_cot_steps(std::string_view text);

// Builds the strategy's final-answer prompt around an existing reasoning
// sample (original or perturbed), asks it, and extracts the label.
EvalRecord answer_from_reasoning(const Question& q, const ReasoningSample& sample,
                                 const Condition& condition, EvalContext& ctx,
                                 const Lineage& lineage);

// Single pipeline entry point: samples reasoning where the strategy calls for
// it, asks the final answer, and returns a full record. Gateway and parser
// failures land as predicted=Invalid with a recorded abort reason.
EvalRecord answer_with_strategy(const Question& q, Strategy strategy, const Condition& condition,
                                EvalContext& ctx);

}  // namespace faithbench
