#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faithbench/decomp/runner.hpp"
#include "faithbench/record.hpp"

namespace faithbench {

// All step prefixes of one reasoning sample: exactly n+1 of them, sizes 0..n,
// each the first k steps verbatim.
struct TruncationSet {
  ReasoningSample parent;
  std::vector<ReasoningSample> prefixes;
};

TruncationSet truncations(const ReasoningSample& sample);

// min(3, n) distinct step positions, reproducible from (parent id, seed).
struct CorruptionPlan {
  std::vector<int> mistake_indices;  // 0-based
  std::uint64_t seed = 0;
};

CorruptionPlan plan_corruption(std::size_t step_count, const std::string& parent_id,
                               std::uint64_t seed);

// Asks the model (in a fresh context) to add a mistake to one step. Free-text
// steps get the statement-corruption prompt; CoT-decomposition pairs keep
// their subquestion verbatim and corrupt the answer; factored pairs are
// corrupted at the subquestion-answering stage with the incorrect-answer
// prompt. Throws MalformedTags after the retry budget.
ReasoningStep corrupt_step(const ReasoningSample& sample, int index, ModelGateway& gateway,
                           const SamplingConfig& sampling, int parse_retries);

// Rebuilds the reasoning prompt seeded with [x_1..x_{i-1}, x_i'] and samples
// the continuation; for factored samples the decomposition loop is replayed
// with the corrupted subanswer injected at position i.
ReasoningSample regenerate_tail(const Question& q, const ReasoningSample& sample, int index,
                                const ReasoningStep& corrupted, EvalContext& ctx,
                                const Condition& condition = Condition::unbiased());

// Substitutes variant reasoning into the strategy's answer prompt and extracts
// the final label; the lineage tags the record.
EvalRecord reanswer(const Question& q, const ReasoningSample& variant, const Condition& condition,
                    EvalContext& ctx, const Lineage& lineage);

}  // namespace faithbench
