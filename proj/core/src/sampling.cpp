#include "faithbench/sampling.hpp"

#include "faithbench/errors.hpp"

namespace faithbench {

void SamplingConfig::validate() const {
  if (!(top_p > 0.0 && top_p <= 1.0)) throw Error("top_p must be in (0, 1]");
  if (temperature < 0.0) throw Error("temperature must be nonnegative");
  if (n_best < 1) throw Error("n_best must be positive");
  if (max_tokens < 1) throw Error("max_tokens must be positive");
}

}  // namespace faithbench
