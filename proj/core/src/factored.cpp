#include "faithbench/decomp/factored.hpp"

#include <algorithm>

#include "faithbench/errors.hpp"
#include "faithbench/strings.hpp"

namespace faithbench {

const char* to_string(AbortReason reason) {
  switch (reason) {
    case AbortReason::None: return "none";
    case AbortReason::MaxRounds: return "max_rounds";
    case AbortReason::Deadlock: return "deadlock";
    case AbortReason::MalformedTags: return "malformed_tags";
    case AbortReason::Gateway: return "gateway";
  }
  return "?";
}

std::vector<SubquestionSlot> answerable(const std::vector<SubquestionSlot>& slots) {
  std::vector<SubquestionSlot> out;
  for (const auto& slot : slots) {
    if (slot.unresolved_refs.empty()) out.push_back(slot);
  }
  std::sort(out.begin(), out.end(),
            [](const SubquestionSlot& a, const SubquestionSlot& b) { return a.index < b.index; });
  return out;
}

std::string sample_subanswer(ModelGateway& gateway, const ExampleStore& store,
                             const std::string& subquestion, const SamplingConfig& sampling,
                             int parse_retries) {
  CompletionRequest req;
  req.prompt = build_fd_subanswer(subquestion, store);
  req.config = sampling;
  req.stop_sequences = {"</result>"};
  req.stage = SampleStage::Subanswer;
  for (int attempt = 0; attempt <= parse_retries; ++attempt) {
    req.resample_index = attempt;
    const std::string raw = gateway.sample(req);
    try {
      const ResultParse result = parse_result(raw);
      return result.unknown ? std::string("Unknown") : result.answer;
    } catch (const MalformedTags&) {
      if (attempt == parse_retries) throw;
    }
  }
  throw MalformedTags("unreachable");
}

namespace {

// Tolerant assembly-time substitution: placeholders whose index is resolved
// are replaced; anything else is left as emitted.
std::string substitute_resolved(const std::string& text,
                                const std::map<int, std::string>& resolved) {
  std::string out = text;
  for (const auto& [index, answer] : resolved) {
    const std::string placeholder =
        "<sub_a_" + std::to_string(index) + "></sub_a_" + std::to_string(index) + ">";
    out = strings::replace_all(out, placeholder, answer);
  }
  return out;
}

}  // namespace

FactoredOutcome run_factored(const Question& q, ModelGateway& gateway, const ExampleStore& store,
                             const PromptOptions& opts, const SamplingConfig& sampling,
                             const FactoredConfig& config, const BiasInjection& bias,
                             const SubanswerHook& hook) {
  FactoredOutcome outcome;
  DecompositionState& state = outcome.state;
  state.transcript = build_fd_decomposition(q, store, opts, bias).history;

  std::vector<QAPairStep> steps;
  std::map<int, std::size_t> step_position;  // slot index -> position in steps
  std::vector<std::string> raw_rounds;

  auto abort = [&](AbortReason reason) {
    state.status = DecompositionState::Status::Aborted;
    state.abort_reason = reason;
  };

  while (true) {
    ++state.round;
    if (state.round > config.max_rounds) {
      abort(AbortReason::MaxRounds);
      break;
    }

    OpenPrompt round_prompt{state.transcript, ""};
    CompletionRequest req;
    req.prompt = round_prompt;
    req.config = sampling;
    req.stop_sequences = {"</FIN>"};
    req.stage = SampleStage::Decomposition;

    std::optional<SlotParse> parsed;
    std::string raw;
    try {
      for (int attempt = 0; attempt <= config.parse_retries; ++attempt) {
        req.resample_index = attempt;
        raw = gateway.sample(req);
        try {
          parsed = parse_slots(raw);
          break;
        } catch (const MalformedTags&) {
          // re-sample with a salted cache key
        }
      }
    } catch (const GatewayError&) {
      abort(AbortReason::Gateway);
      break;
    }
    if (!parsed) {
      abort(AbortReason::MalformedTags);
      break;
    }

    state.transcript.push_assistant(raw);
    raw_rounds.push_back(raw);

    if (parsed->finished) {
      state.status = DecompositionState::Status::Finished;
      state.slots.clear();
      break;
    }
    state.slots = parsed->slots;

    const std::vector<SubquestionSlot> ready = answerable(state.slots);
    if (ready.empty()) {
      abort(AbortReason::Deadlock);
      break;
    }

    std::size_t new_entries = 0;
    std::vector<std::string> feed_blocks;
    bool failed = false;
    for (const auto& slot : ready) {
      const auto existing = step_position.find(slot.index);
      const int resolution_index =
          existing == step_position.end() ? static_cast<int>(steps.size())
                                          : static_cast<int>(existing->second);
      std::optional<std::string> answer;
      try {
        if (hook) answer = hook(resolution_index, slot.text);
        if (!answer) {
          answer = sample_subanswer(gateway, store, slot.text, sampling, config.parse_retries);
        }
      } catch (const MalformedTags&) {
        abort(AbortReason::MalformedTags);
        failed = true;
        break;
      } catch (const GatewayError&) {
        abort(AbortReason::Gateway);
        failed = true;
        break;
      }
      if (existing == step_position.end()) {
        step_position[slot.index] = steps.size();
        steps.push_back({slot.text, *answer});
        ++new_entries;
      } else {
        // The model regenerated an already-answered subquestion; keep its
        // original position and overwrite the content.
        steps[existing->second] = {slot.text, *answer};
      }
      state.resolved[slot.index] = *answer;
      const std::string n = std::to_string(slot.index);
      feed_blocks.push_back("<sub_a_" + n + ">" + *answer + "</sub_a_" + n + ">");
    }
    if (failed) break;
    if (new_entries == 0) {
      // Every answerable slot was a re-ask; the resolved map did not grow.
      abort(AbortReason::Deadlock);
      break;
    }
    state.transcript.push_human("\n" + strings::join(feed_blocks, "\n"));
  }

  outcome.sample.strategy = Strategy::Factored;
  outcome.sample.raw = strings::join(raw_rounds, "\n");
  for (auto& step : steps) {
    outcome.sample.steps.emplace_back(
        QAPairStep{substitute_resolved(step.subquestion, state.resolved), step.subanswer});
  }
  outcome.sample.validate();
  return outcome;
}

}  // namespace faithbench
