#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "faithbench/metrics/metrics.hpp"
#include "faithbench/record.hpp"

namespace faithbench {

// The full evaluation report: accuracy per (task x strategy x condition),
// truncation curves with standard errors, sensitivity scores, bias deltas,
// overall faithfulness scores, plus a flat CSV of curve points for plotting.
// Building is pure and deterministic: identical records give identical bytes.
struct Report {
  nlohmann::ordered_json body;
  std::string curve_csv;

  std::string dump_json() const { return body.dump(2) + "\n"; }
};

Report build_report(std::span<const EvalRecord> records);

}  // namespace faithbench
