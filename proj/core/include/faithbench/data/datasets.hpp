#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "faithbench/question.hpp"

namespace faithbench {

// Parses one JSONL task file into validated Questions. schema_id selects the
// import adapter: "internal" is the native schema
// {"id": str, "task": str, "question": str, "choices": [str], "gold": int};
// "hotpotqa", "strategyqa", "openbookqa" and "truthfulqa" accept those
// datasets' published formats. Throws SchemaViolation with the line number;
// duplicate ids are rejected.
std::vector<Question> load_task(const std::filesystem::path& path, const std::string& schema_id,
                                const std::string& task_id = "");

// Keeps questions whose choice texts are exactly {Yes, No} (case-insensitive).
std::vector<Question> filter_binary(std::span<const Question> questions);

// Uniform sample without replacement, deterministic per seed. n greater than
// the pool throws InsufficientQuestions; n equal to the pool returns the whole
// pool in shuffled order.
std::vector<Question> sample_eval_set(std::span<const Question> questions, std::size_t n,
                                      std::uint64_t seed);

// Native-schema JSONL line for a question (lossless round-trip with the
// internal adapter).
std::string to_internal_jsonl(const Question& q);

}  // namespace faithbench
