#include "qwork/serialize.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <system_error>

#include "qwork/errors.hpp"

namespace qwork {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc()) throw NumericFailure("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const int d = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (d < 1 || entries.size() != static_cast<std::size_t>(d) * d) {
      throw InvalidArgument("matrix JSON: expected dim*dim entries");
    }
    ComplexMatrix m(d, d);
    for (int k = 0; k < d * d; ++k) {
      const auto& e = entries.at(static_cast<std::size_t>(k));
      if (e.size() != 2) throw InvalidArgument("matrix JSON: entries must be [re, im] pairs");
      m(k / d, k % d) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("matrix JSON: ") + e.what());
  }
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file '" + path + "'");
  try {
    return matrix_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("matrix file '" + path + "': " + e.what());
  }
}

Json to_json(const JointWorkTable& t) {
  Json rows = Json::array();
  for (int m = 0; m < t.P.rows(); ++m) {
    Json row = Json::array();
    for (int n = 0; n < t.P.cols(); ++n) row.push_back(t.P(m, n));
    rows.push_back(std::move(row));
  }
  return Json{{"scheme", std::string(to_string(t.scheme))},
              {"energies", Json{{"initial", t.e_init}, {"final", t.e_final}}},
              {"P", std::move(rows)}};
}

JointWorkTable table_from_json(const nlohmann::json& j) {
  try {
    JointWorkTable t;
    t.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    t.e_init = j.at("energies").at("initial").get<std::vector<double>>();
    t.e_final = j.at("energies").at("final").get<std::vector<double>>();
    const auto& rows = j.at("P");
    if (rows.size() != t.e_final.size()) throw InvalidArgument("table JSON: row count mismatch");
    t.P.resize(static_cast<Eigen::Index>(t.e_final.size()), static_cast<Eigen::Index>(t.e_init.size()));
    for (std::size_t m = 0; m < rows.size(); ++m) {
      if (rows[m].size() != t.e_init.size()) throw InvalidArgument("table JSON: column count mismatch");
      for (std::size_t n = 0; n < t.e_init.size(); ++n) {
        t.P(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = rows[m][n].get<double>();
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("table JSON: ") + e.what());
  }
}

Json to_json(const WorkDistribution& d) {
  Json points = Json::array();
  for (const auto& pt : d.points) points.push_back(Json{{"w", pt.w}, {"p", pt.p}});
  return Json{{"scheme", std::string(to_string(d.scheme))}, {"bin_tol", d.bin_tol}, {"points", std::move(points)}};
}

WorkDistribution distribution_from_json(const nlohmann::json& j) {
  try {
    WorkDistribution d;
    d.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    d.bin_tol = j.value("bin_tol", 0.0);
    for (const auto& pt : j.at("points")) d.points.push_back({pt.at("w").get<double>(), pt.at("p").get<double>()});
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("distribution JSON: ") + e.what());
  }
}

Json to_json(const GapReport& r) {
  return Json{{"gap_first", r.gap_first},     {"gap_second", r.gap_second},   {"gap_variance", r.gap_variance},
              {"bound_first", r.bound_first}, {"bound_second", r.bound_second}, {"coherence", r.coherence}};
}

Json to_json(const EntropyReport& r) {
  return Json{{"beta", r.beta},
              {"delta_f", r.delta_f},
              {"w_tpm", r.mean_work_tpm},
              {"w_mh", r.mean_work_mh},
              {"sigma_tpm", r.sigma_tpm},
              {"sigma_mh", r.sigma_mh},
              {"xi", r.xi},
              {"exp_avg_tpm", r.exp_avg_tpm},
              {"exp_avg_mh", r.exp_avg_mh},
              {"negativity", r.mh_negativity}};
}

void write_csv(std::ostream& os, const JointWorkTable& t) {
  os << "m,n,E_final,E_init,P\n";
  for (int m = 0; m < t.P.rows(); ++m) {
    for (int n = 0; n < t.P.cols(); ++n) {
      os << m << ',' << n << ',' << format_number(t.e_final[m]) << ',' << format_number(t.e_init[n]) << ','
         << format_number(t.P(m, n)) << '\n';
    }
  }
}

void write_csv(std::ostream& os, const WorkDistribution& d) {
  os << "w,p\n";
  for (const auto& pt : d.points) os << format_number(pt.w) << ',' << format_number(pt.p) << '\n';
}

}  // namespace qwork
