#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qwork/sampling.hpp"
#include "qwork/serialize.hpp"

using namespace qwork;

TEST_CASE("format_number round-trips") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-2.0) == "-2");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  for (double x : {1.0 / 3.0, 1e-300, 6.02e23, -0.0}) CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("matrix JSON round-trip") {
  SampleStream stream(60);
  const ComplexMatrix m = stream.ginibre(3, 3);
  const Json j = to_json(m);
  CHECK(j["dim"] == 3);
  CHECK(j["entries"].size() == 9);
  CHECK(j["entries"][1][0].get<double>() == m(0, 1).real());
  const ComplexMatrix back = matrix_from_json(nlohmann::json::parse(j.dump()));
  CHECK((back.array() == m.array()).all());

  CHECK_THROWS(matrix_from_json(nlohmann::json::parse(R"({"dim": 2, "entries": [[1, 0]]})")));
}

TEST_CASE("table and distribution JSON and CSV") {
  const auto z = spectral_decompose(pauli_z());
  const auto rho = thermal_coherent_qubit(0.2, 1.0);
  const auto t = mh_joint(rho, z, z, real_rotation(0.4));

  const auto t2 = table_from_json(nlohmann::json::parse(to_json(t).dump()));
  CHECK(t2.scheme == Scheme::MH);
  CHECK((t2.P.array() == t.P.array()).all());
  CHECK(t2.e_init == t.e_init);

  const auto d = work_distribution(t);
  const auto d2 = distribution_from_json(nlohmann::json::parse(to_json(d).dump()));
  REQUIRE(d2.points.size() == d.points.size());
  for (std::size_t k = 0; k < d.points.size(); ++k) {
    CHECK(d2.points[k].w == d.points[k].w);
    CHECK(d2.points[k].p == d.points[k].p);
  }

  std::ostringstream csv;
  write_csv(csv, d);
  CHECK(csv.str().rfind("w,p\n", 0) == 0);
  CHECK(csv.str().find('\r') == std::string::npos);

  std::ostringstream table_csv;
  write_csv(table_csv, t);
  CHECK(table_csv.str().rfind("m,n,E_final,E_init,P\n", 0) == 0);
}

TEST_CASE("report JSON keys") {
  const auto z = spectral_decompose(pauli_z());
  const auto half = spectral_decompose(0.5 * pauli_z());
  const auto rho = thermal_coherent_qubit(0.2, 0.5);
  const Json e = to_json(entropy_report(rho, z, half, real_rotation(0.3), 0.2));
  for (const char* key : {"beta", "delta_f", "w_tpm", "w_mh", "sigma_tpm", "sigma_mh", "xi", "negativity"})
    CHECK(e.contains(key));
  const Json g = to_json(gap_report(rho, z, real_rotation(0.3)));
  CHECK(g.contains("gap_first"));
  CHECK(g.contains("bound_second"));
}
