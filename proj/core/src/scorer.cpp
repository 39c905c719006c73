#include "faithbench/gateway/scorer.hpp"

#include "faithbench/errors.hpp"

namespace faithbench {

std::shared_ptr<Scorer> make_scorer(const std::string& id) {
  if (id == "none" || id.empty()) return nullptr;
  if (id == "length") return std::make_shared<LengthScorer>();
  if (id == "constant") return std::make_shared<ConstantScorer>();
  throw Error("unknown scorer \"" + id + "\"");
}

}  // namespace faithbench
