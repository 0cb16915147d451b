#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "qwork/qmath.hpp"

namespace qwork {

enum class Scheme { TPM, MH };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view name);

/// Joint (quasi)probabilities of measuring the final energy level m and the
/// initial energy level n. Rows index final levels, columns initial levels;
/// degenerate levels are single rows/columns (per-energy, not per-eigenvector).
struct JointWorkTable {
  Scheme scheme = Scheme::TPM;
  RealMatrix P;                  // P(m, n)
  std::vector<double> e_init;    // E^0_n, descending
  std::vector<double> e_final;   // E^tau_m, descending

  double total() const { return P.sum(); }
  double min_entry() const { return P.minCoeff(); }
  // sum_m P(m, n)
  RealVector initial_marginal() const { return P.colwise().sum().transpose(); }
};

// P(m,n) = Tr[P^tau_m U P^0_n rho P^0_n U^dagger P^tau_m]
JointWorkTable tpm_joint(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                         const UnitaryPropagator& u);

// P(m,n) = Re Tr[U^dagger P^tau_m U P^0_n rho]
JointWorkTable mh_joint(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                        const UnitaryPropagator& u);

JointWorkTable joint_table(Scheme scheme, const DensityMatrix& rho0, const HermitianObservable& h0,
                           const HermitianObservable& h_tau, const UnitaryPropagator& u);

struct WorkPoint {
  double w = 0.0;
  double p = 0.0;
};

struct WorkDistribution {
  Scheme scheme = Scheme::TPM;
  std::vector<WorkPoint> points;  // ascending in w
  double bin_tol = 0.0;

  double total() const;
};

// Accumulates P(m,n) onto w = E^tau_m - E^0_n. Values closer than bin_tol
// (chained) share a bin; mass is summed, never renormalised, and signed MH
// weights are kept as they are.
WorkDistribution work_distribution(const JointWorkTable& table, double bin_tol);
// bin_tol = binning_rel * max|E|.
WorkDistribution work_distribution(const JointWorkTable& table, const NumericPolicy& policy = kDefaultPolicy);

inline constexpr int kMaxMomentOrder = 6;

struct MomentSet {
  Scheme scheme = Scheme::TPM;
  std::vector<double> raw;        // raw[k] = <w^k>, raw[0] = total mass
  std::vector<double> cumulants;  // cumulants[k] = kappa^(k), index 0 unused

  double mean() const { return raw[1]; }
  double second() const { return raw[2]; }
  double variance() const { return raw[2] - raw[1] * raw[1]; }
  double moment(int k) const { return raw.at(static_cast<std::size_t>(k)); }
  double cumulant(int k) const { return cumulants.at(static_cast<std::size_t>(k)); }
  int max_order() const { return static_cast<int>(raw.size()) - 1; }
};

// Raw moments and cumulants up to max_order (1..6); order 2 is always included.
MomentSet moments_from_distribution(const WorkDistribution& dist, int max_order = 2);

// Standard moment-cumulant recursion; raw[0] is taken as the normalisation.
std::vector<double> cumulants_from_moments(const std::vector<double>& raw);

/// <w^m>_TPM evaluated on operators: sum_n Tr[P^0_n rho P^0_n (U^dagger H_tau U - E^0_n)^m].
/// For m = 1, 2 this equals Tr[D(rho)(U^dagger H_tau U - H_0)^m]; for m >= 3 that
/// shorter form is not the TPM moment, because H_0 does not commute with the
/// evolved Hamiltonian.
double analytic_moment_tpm(const DensityMatrix& rho0, const HermitianObservable& h0,
                           const HermitianObservable& h_tau, const UnitaryPropagator& u, int m);

/// <w^m>_MH = 1/2 sum_l binom(m,l) Tr[{Ht^l, (-H_0)^(m-l)} rho], Ht = U^dagger H_tau U.
double analytic_moment_mh(const DensityMatrix& rho0, const HermitianObservable& h0,
                          const HermitianObservable& h_tau, const UnitaryPropagator& u, int m);

double analytic_moment(Scheme scheme, const DensityMatrix& rho0, const HermitianObservable& h0,
                       const HermitianObservable& h_tau, const UnitaryPropagator& u, int m);

// G(eta) = sum_k p_k exp(i eta w_k)
std::complex<double> characteristic_function(const WorkDistribution& dist, double eta);

}  // namespace qwork
