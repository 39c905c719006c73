#pragma once

#include <string>

namespace faithbench {

// Nucleus-sampling configuration. Defaults follow the reference setup
// (top_p 0.95, temperature 0.8, best-of-5); scorer "none" makes sampling a
// single pass-through draw regardless of n_best.
struct SamplingConfig {
  double top_p = 0.95;       // in (0, 1]
  double temperature = 0.8;  // >= 0
  int n_best = 5;            // >= 1
  int max_tokens = 768;      // > 0
  std::string scorer_id = "none";

  void validate() const;  // throws Error on out-of-range fields
};

}  // namespace faithbench
