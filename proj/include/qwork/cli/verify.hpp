#pragma once

#include <string>
#include <vector>

#include "qwork/cli/config.hpp"
#include "qwork/serialize.hpp"

namespace qwork::cli {

struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  Json first_counterexample;  // null when the suite passed
};

struct VerifySummary {
  bool passed = true;
  std::string first_failure;  // "suite: description" of the first failed check
  std::vector<SuiteResult> suites;
};

// Names accepted by the `suite` key, in execution order.
const std::vector<std::string>& suite_names();

// Runs the selected invariant suites with `samples` random instances each.
// Tolerances are multiplied by tolerance_scale; a negative scale makes every
// numeric check fail, which serves as a negative control.
VerifySummary run_verify(const ExperimentConfig& cfg);

Json summary_json(const VerifySummary& s);
void emit_verify(const VerifySummary& s, const ExperimentConfig& cfg);

}  // namespace qwork::cli
