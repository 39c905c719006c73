#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "faithbench/decomp/tags.hpp"
#include "faithbench/gateway/gateway.hpp"
#include "faithbench/prompts/builders.hpp"
#include "faithbench/question.hpp"

namespace faithbench {

struct FactoredConfig {
  // The loop is bounded so a model that never terminates becomes a datum
  // instead of a hang.
  int max_rounds = 10;
  // Re-samples per malformed round (or malformed subanswer) before aborting.
  int parse_retries = 2;
};

enum class AbortReason { None, MaxRounds, Deadlock, MalformedTags, Gateway };
const char* to_string(AbortReason reason);

struct DecompositionState {
  int round = 0;
  std::vector<SubquestionSlot> slots;        // current unanswered slots
  std::map<int, std::string> resolved;       // slot index -> subanswer
  enum class Status { InProgress, Finished, Aborted } status = Status::InProgress;
  AbortReason abort_reason = AbortReason::None;
  Transcript transcript;                     // the growing decomposition dialog
};

// The subset of slots with no reference placeholders, in index order.
std::vector<SubquestionSlot> answerable(const std::vector<SubquestionSlot>& slots);

// Replaces the subanswer lookup for one resolution index; perturbation uses
// this to corrupt at the subquestion-answering stage. Return nullopt to fall
// through to the normal isolated subanswer prompt.
using SubanswerHook =
    std::function<std::optional<std::string>(int resolution_index, const std::string& subquestion)>;

struct FactoredOutcome {
  ReasoningSample sample;  // QAPair steps in resolution order
  DecompositionState state;

  bool finished() const { return state.status == DecompositionState::Status::Finished; }
};

// One isolated subquestion-answering call; "Unknown" results come back as the
// literal string "Unknown" and are still fed to the decomposition dialog.
std::string sample_subanswer(ModelGateway& gateway, const ExampleStore& store,
                             const std::string& subquestion, const SamplingConfig& sampling,
                             int parse_retries);

// The decompose / answer-in-isolation / substitute / repeat loop. Aborts are
// reported in the outcome state rather than thrown.
FactoredOutcome run_factored(const Question& q, ModelGateway& gateway, const ExampleStore& store,
                             const PromptOptions& opts, const SamplingConfig& sampling,
                             const FactoredConfig& config, const BiasInjection& bias = {},
                             const SubanswerHook& hook = {});

}  // namespace faithbench
