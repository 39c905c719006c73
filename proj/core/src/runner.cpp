#include "faithbench/decomp/runner.hpp"

#include "faithbench/answer.hpp"
#include "faithbench/errors.hpp"
#include "faithbench/strings.hpp"

namespace faithbench {

namespace {

EvalRecord blank_record(const Question& q, Strategy strategy, const Condition& condition,
                        const Lineage& lineage) {
  EvalRecord record;
  record.question_id = q.id;
  record.task = q.task_id;
  record.strategy = strategy;
  record.condition = condition;
  record.gold_label = q.gold_label;
  record.lineage = lineage;
  record.sample.strategy = strategy;
  return record;
}

void finish_with_answer(EvalRecord& record, const Question& q, const OpenPrompt& prompt,
                        EvalContext& ctx, SampleStage stage) {
  CompletionRequest req;
  req.prompt = prompt;
  req.config = ctx.sampling;
  req.stage = stage;
  const std::string completion = ctx.gateway.sample(req);
  record.predicted_label = parse_final_answer(prompt.assistant_stub + completion);
  record.correct = record.predicted_label && *record.predicted_label == q.gold_label;
}

}  // namespace

std::vector<ReasoningStep> parse_cot_steps(std::string_view text) {
  std::vector<ReasoningStep> steps;
  for (auto& chunk : strings::split_paragraphs(text)) {
    steps.emplace_back(FreeTextStep{std::move(chunk)});
  }
  return steps;
}

EvalRecord answer_from_reasoning(const Question& q, const ReasoningSample& sample,
                                 const Condition& condition, EvalContext& ctx,
                                 const Lineage& lineage) {
  sample.validate();
  EvalRecord record = blank_record(q, sample.strategy, condition, lineage);
  record.sample = sample;
  const BiasInjection bias = BiasInjection::from(condition, q);
  try {
    OpenPrompt prompt;
    SampleStage stage = SampleStage::Answer;
    switch (sample.strategy) {
      case Strategy::ZeroShot:
      case Strategy::FewShot:
        prompt = build_direct(q, ctx.store, sample.strategy, ctx.prompts, bias);
        break;
      case Strategy::CoT:
        prompt = build_cot_answer(q, ctx.store, sample.steps, ctx.prompts, bias);
        break;
      case Strategy::CoTDecomp:
        prompt = build_cotd_answer(q, ctx.store, sample.steps, ctx.prompts, bias);
        break;
      case Strategy::Factored:
        prompt = build_fd_recomposition(q, sample.steps, ctx.store, ctx.prompts, bias);
        stage = SampleStage::Recomposition;
        break;
    }
    finish_with_answer(record, q, prompt, ctx, stage);
  } catch (const EmptyEvidence&) {
    record.abort_reason = "empty_evidence";
  } catch (const GatewayError& e) {
    record.abort_reason = std::string("gateway:") + e.what();
  }
  return record;
}

EvalRecord answer_with_strategy(const Question& q, Strategy strategy, const Condition& condition,
                                EvalContext& ctx) {
  const BiasInjection bias = BiasInjection::from(condition, q);
  ReasoningSample sample;
  sample.strategy = strategy;

  try {
    switch (strategy) {
      case Strategy::ZeroShot:
      case Strategy::FewShot:
        break;  // no reasoning phase
      case Strategy::CoT: {
        CompletionRequest req;
        req.prompt = build_cot_reasoning(q, ctx.store, ctx.prompts, bias);
        req.config = ctx.sampling;
        req.stage = SampleStage::Reasoning;
        sample.raw = ctx.gateway.sample(req);
        sample.steps = parse_cot_steps(sample.raw);
        break;
      }
      case Strategy::CoTDecomp: {
        CompletionRequest req;
        req.prompt = build_cotd_reasoning(q, ctx.store, ctx.prompts, bias);
        req.config = ctx.sampling;
        req.stop_sequences = {"</FIN>"};
        req.stage = SampleStage::Reasoning;
        sample.raw = ctx.gateway.sample(req);
        try {
          for (auto& pair : parse_cotd(sample.raw)) sample.steps.emplace_back(std::move(pair));
        } catch (const MalformedTags& e) {
          EvalRecord record = blank_record(q, strategy, condition, Lineage::none());
          record.sample = sample;
          record.sample.steps.clear();
          record.abort_reason = e.what();
          return record;
        }
        break;
      }
      case Strategy::Factored: {
        FactoredOutcome outcome = run_factored(q, ctx.gateway, ctx.store, ctx.prompts,
                                               ctx.sampling, ctx.factored, bias);
        sample = outcome.sample;
        if (!outcome.finished()) {
          EvalRecord record = blank_record(q, strategy, condition, Lineage::none());
          record.sample = sample;
          record.abort_reason =
              std::string("aborted:") + to_string(outcome.state.abort_reason);
          return record;
        }
        break;
      }
    }
  } catch (const GatewayError& e) {
    EvalRecord record = blank_record(q, strategy, condition, Lineage::none());
    record.abort_reason = std::string("gateway:") + e.what();
    return record;
  }

  return answer_from_reasoning(q, sample, condition, ctx, Lineage::none());
}

}  // namespace faithbench
