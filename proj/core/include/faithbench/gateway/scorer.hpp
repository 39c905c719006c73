#pragma once

#include <memory>
#include <string>

#include "faithbench/transcript.hpp"

namespace faithbench {

// Ranks candidate completions for best-of-N. The reference setup scored with
// its preference model; that is not available here, so scorers are pluggable
// and "none" means single-draw pass-through.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(const Transcript& context, const std::string& completion) const = 0;
  virtual std::string id() const = 0;
};

class LengthScorer : public Scorer {
 public:
  double score(const Transcript&, const std::string& completion) const override {
    return static_cast<double>(completion.size());
  }
  std::string id() const override { return "length"; }
};

class ConstantScorer : public Scorer {
 public:
  explicit ConstantScorer(double value = 0.0) : value_(value) {}
  double score(const Transcript&, const std::string&) const override { return value_; }
  std::string id() const override { return "constant"; }

 private:
  double value_;
};

// nullptr for "none" (pass-through); throws Error for unknown ids.
std::shared_ptr<Scorer> make_scorer(const std::string& id);

}  // namespace faithbench
