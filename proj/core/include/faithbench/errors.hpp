#pragma once

#include <stdexcept>
#include <string>

namespace faithbench {

// Base for all faithbench exceptions so callers can catch the library in one net.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Structured model output that does not satisfy the tag grammar.
class MalformedTags : public Error {
 public:
  explicit MalformedTags(const std::string& what) : Error("malformed tags: " + what) {}
};

class InvalidPermutation : public Error {
 public:
  explicit InvalidPermutation(const std::string& what) : Error("invalid permutation: " + what) {}
};

class UnresolvedReference : public Error {
 public:
  explicit UnresolvedReference(int index)
      : Error("unresolved reference: <sub_a_" + std::to_string(index) + "> has no answer") {}
};

class EmptyExampleStore : public Error {
 public:
  EmptyExampleStore() : Error("few-shot prompt requested with an empty example store") {}
};

class EmptyEvidence : public Error {
 public:
  EmptyEvidence() : Error("recomposition requires at least one subquestion/answer pair") {}
};

class ConditionInapplicable : public Error {
 public:
  explicit ConditionInapplicable(const std::string& what) : Error("condition inapplicable: " + what) {}
};

class SchemaViolation : public Error {
 public:
  SchemaViolation(const std::string& what, long line)
      : Error("schema violation at line " + std::to_string(line) + ": " + what) {}
};

class InsufficientQuestions : public Error {
 public:
  InsufficientQuestions(std::size_t pool, std::size_t wanted)
      : Error("asked for " + std::to_string(wanted) + " questions but pool has " +
              std::to_string(pool)) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what) : Error("empty input: " + what) {}
};

class GatewayError : public Error {
 public:
  enum class Kind { BackendUnavailable, ContextTooLong };

  GatewayError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace faithbench
