#include "qwork/workstats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwork/errors.hpp"

namespace qwork {

namespace {

void check_dims(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                const UnitaryPropagator& u, std::string_view what) {
  const int d = rho0.dim();
  if (h0.dim() != d || h_tau.dim() != d || u.dim() != d) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (rho " + std::to_string(d) + ", H0 " +
                          std::to_string(h0.dim()) + ", Htau " + std::to_string(h_tau.dim()) + ", U " +
                          std::to_string(u.dim()) + ")");
  }
}

// Tr[A B] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.transpose().cwiseProduct(b).sum();
}

std::vector<double> level_energies(const HermitianObservable& h) {
  std::vector<double> e;
  e.reserve(h.levels().size());
  for (const auto& level : h.levels()) e.push_back(level.energy);
  return e;
}

std::vector<ComplexMatrix> evolved_projectors(const HermitianObservable& h_tau, const UnitaryPropagator& u) {
  std::vector<ComplexMatrix> out;
  out.reserve(h_tau.levels().size());
  for (const auto& level : h_tau.levels()) out.push_back(u.heisenberg(level.projector));
  return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

std::string_view to_string(Scheme s) {
  return s == Scheme::TPM ? "TPM" : "MH";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "TPM" || name == "tpm") return Scheme::TPM;
  if (name == "MH" || name == "mh") return Scheme::MH;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

JointWorkTable tpm_joint(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                         const UnitaryPropagator& u) {
  check_dims(rho0, h0, h_tau, u, "tpm_joint");
  JointWorkTable t;
  t.scheme = Scheme::TPM;
  t.e_init = level_energies(h0);
  t.e_final = level_energies(h_tau);
  t.P.resize(h_tau.num_levels(), h0.num_levels());

  const auto finals = evolved_projectors(h_tau, u);
  for (int n = 0; n < h0.num_levels(); ++n) {
    const auto& pn = h0.levels()[n].projector;
    const ComplexMatrix sandwiched = pn * rho0.matrix() * pn;
    for (int m = 0; m < h_tau.num_levels(); ++m) {
      t.P(m, n) = trace_of_product(finals[m], sandwiched).real();
    }
  }
  return t;
}

JointWorkTable mh_joint(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                        const UnitaryPropagator& u) {
  check_dims(rho0, h0, h_tau, u, "mh_joint");
  JointWorkTable t;
  t.scheme = Scheme::MH;
  t.e_init = level_energies(h0);
  t.e_final = level_energies(h_tau);
  t.P.resize(h_tau.num_levels(), h0.num_levels());

  const auto finals = evolved_projectors(h_tau, u);
  for (int n = 0; n < h0.num_levels(); ++n) {
    const ComplexMatrix projected = h0.levels()[n].projector * rho0.matrix();
    for (int m = 0; m < h_tau.num_levels(); ++m) {
      t.P(m, n) = trace_of_product(finals[m], projected).real();
    }
  }
  return t;
}

JointWorkTable joint_table(Scheme scheme, const DensityMatrix& rho0, const HermitianObservable& h0,
                           const HermitianObservable& h_tau, const UnitaryPropagator& u) {
  return scheme == Scheme::TPM ? tpm_joint(rho0, h0, h_tau, u) : mh_joint(rho0, h0, h_tau, u);
}

double WorkDistribution::total() const {
  double s = 0.0;
  for (const auto& pt : points) s += pt.p;
  return s;
}

WorkDistribution work_distribution(const JointWorkTable& table, double bin_tol) {
  if (!(bin_tol >= 0.0)) throw InvalidArgument("work_distribution: bin_tol must be non-negative");
  std::vector<WorkPoint> raw;
  raw.reserve(static_cast<std::size_t>(table.P.size()));
  for (int m = 0; m < table.P.rows(); ++m) {
    for (int n = 0; n < table.P.cols(); ++n) {
      raw.push_back({table.e_final[m] - table.e_init[n], table.P(m, n)});
    }
  }
  std::stable_sort(raw.begin(), raw.end(), [](const WorkPoint& a, const WorkPoint& b) { return a.w < b.w; });

  WorkDistribution dist;
  dist.scheme = table.scheme;
  dist.bin_tol = bin_tol;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i + 1;
    double w_sum = raw[i].w;
    double p_sum = raw[i].p;
    while (j < raw.size() && raw[j].w - raw[j - 1].w <= bin_tol) {
      w_sum += raw[j].w;
      p_sum += raw[j].p;
      ++j;
    }
    dist.points.push_back({w_sum / static_cast<double>(j - i), p_sum});
    i = j;
  }
  return dist;
}

WorkDistribution work_distribution(const JointWorkTable& table, const NumericPolicy& policy) {
  double e_max = 0.0;
  for (double e : table.e_init) e_max = std::max(e_max, std::abs(e));
  for (double e : table.e_final) e_max = std::max(e_max, std::abs(e));
  return work_distribution(table, policy.binning_rel * e_max);
}

std::vector<double> cumulants_from_moments(const std::vector<double>& raw) {
  const std::size_t n_max = raw.size() - 1;
  const double norm = raw[0];
  std::vector<double> mu(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) mu[k] = raw[k] / norm;
  std::vector<double> kappa(raw.size(), 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    double acc = mu[n];
    for (std::size_t k = 1; k < n; ++k) {
      acc -= binomial(static_cast<int>(n - 1), static_cast<int>(k - 1)) * kappa[k] * mu[n - k];
    }
    kappa[n] = acc;
  }
  return kappa;
}

MomentSet moments_from_distribution(const WorkDistribution& dist, int max_order) {
  if (max_order < 1 || max_order > kMaxMomentOrder) {
    throw InvalidArgument("moments_from_distribution: max_order must be in [1, " +
                          std::to_string(kMaxMomentOrder) + "]");
  }
  const int order = std::max(max_order, 2);
  MomentSet ms;
  ms.scheme = dist.scheme;
  ms.raw.assign(static_cast<std::size_t>(order) + 1, 0.0);
  for (const auto& pt : dist.points) {
    double wk = 1.0;
    for (int k = 0; k <= order; ++k) {
      ms.raw[static_cast<std::size_t>(k)] += pt.p * wk;
      wk *= pt.w;
    }
  }
  ms.cumulants = cumulants_from_moments(ms.raw);
  return ms;
}

double analytic_moment_tpm(const DensityMatrix& rho0, const HermitianObservable& h0,
                           const HermitianObservable& h_tau, const UnitaryPropagator& u, int m) {
  check_dims(rho0, h0, h_tau, u, "analytic_moment_tpm");
  if (m < 1) throw InvalidArgument("analytic_moment_tpm: m must be >= 1");
  const int d = rho0.dim();
  const ComplexMatrix evolved = u.heisenberg(h_tau.matrix());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  double total = 0.0;
  for (const auto& level : h0.levels()) {
    const ComplexMatrix block = level.projector * rho0.matrix() * level.projector;
    const ComplexMatrix shifted = matrix_power(evolved - level.energy * id, m);
    total += trace_of_product(block, shifted).real();
  }
  return total;
}

double analytic_moment_mh(const DensityMatrix& rho0, const HermitianObservable& h0,
                          const HermitianObservable& h_tau, const UnitaryPropagator& u, int m) {
  check_dims(rho0, h0, h_tau, u, "analytic_moment_mh");
  if (m < 1) throw InvalidArgument("analytic_moment_mh: m must be >= 1");
  const ComplexMatrix evolved = u.heisenberg(h_tau.matrix());
  const ComplexMatrix minus_h0 = -h0.matrix();
  Complex total = 0.0;
  for (int l = 0; l <= m; ++l) {
    const ComplexMatrix a = matrix_power(evolved, l);
    const ComplexMatrix b = matrix_power(minus_h0, m - l);
    const ComplexMatrix anticommutator = a * b + b * a;
    total += binomial(m, l) * trace_of_product(anticommutator, rho0.matrix());
  }
  return 0.5 * total.real();
}

double analytic_moment(Scheme scheme, const DensityMatrix& rho0, const HermitianObservable& h0,
                       const HermitianObservable& h_tau, const UnitaryPropagator& u, int m) {
  return scheme == Scheme::TPM ? analytic_moment_tpm(rho0, h0, h_tau, u, m)
                               : analytic_moment_mh(rho0, h0, h_tau, u, m);
}

std::complex<double> characteristic_function(const WorkDistribution& dist, double eta) {
  std::complex<double> g = 0.0;
  for (const auto& pt : dist.points) g += pt.p * std::exp(std::complex<double>(0.0, eta * pt.w));
  return g;
}

}  // namespace qwork
