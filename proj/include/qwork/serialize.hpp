#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "qwork/bounds.hpp"
#include "qwork/entropy.hpp"
#include "qwork/qmath.hpp"
#include "qwork/workstats.hpp"

namespace qwork {

using Json = nlohmann::ordered_json;

// Shortest decimal form that round-trips to the same double ("." separator).
std::string format_number(double x);

// {"dim": d, "entries": [[re, im], ...]} in row-major order.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
ComplexMatrix read_matrix_file(const std::string& path);

// {"scheme", "energies": {"initial", "final"}, "P": [[...] per final level]}
Json to_json(const JointWorkTable& t);
JointWorkTable table_from_json(const nlohmann::json& j);

// {"scheme", "bin_tol", "points": [{"w", "p"}, ...]}
Json to_json(const WorkDistribution& d);
WorkDistribution distribution_from_json(const nlohmann::json& j);

Json to_json(const GapReport& r);
Json to_json(const EntropyReport& r);

// CSV: header row, LF line endings.
void write_csv(std::ostream& os, const JointWorkTable& t);     // m,n,E_final,E_init,P
void write_csv(std::ostream& os, const WorkDistribution& d);   // w,p

}  // namespace qwork
