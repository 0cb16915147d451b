#pragma once

#include <iosfwd>

#include "qwork/cli/config.hpp"
#include "qwork/cli/output.hpp"
#include "qwork/qmath.hpp"

namespace qwork::cli {

// Each command evaluates its grid in parallel and returns rows in grid order.
ResultTable bound_scan(const ExperimentConfig& cfg);
ResultTable variance_map(const ExperimentConfig& cfg);
ResultTable entropy_scan(const ExperimentConfig& cfg);
ResultTable table1_scan(const ExperimentConfig& cfg);

// Hamiltonian selected by bound-scan's `hamiltonian` key.
HermitianObservable scan_hamiltonian(const std::string& spec, int dim);

// Runs the configured command and writes its output. Returns the exit code.
int run_command(const ExperimentConfig& cfg, std::ostream& err);

}  // namespace qwork::cli
