#include "qwork/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwork/coherence.hpp"
#include "qwork/errors.hpp"

namespace qwork {

namespace {

void require_positive_beta(double beta, std::string_view what) {
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw InvalidArgument(std::string(what) + ": beta must be finite and positive");
  }
}

// sum_k exp(sign * beta * E_k + offset) P_k
ComplexMatrix spectral_exponential(const HermitianObservable& h, double scale, double offset) {
  ComplexMatrix out = ComplexMatrix::Zero(h.dim(), h.dim());
  for (const auto& level : h.levels()) {
    const double weight = std::exp(scale * level.energy + offset);
    if (!std::isfinite(weight)) {
      throw NumericFailure("spectral exponential overflow; Gibbs state is numerically singular");
    }
    out += weight * level.projector;
  }
  return out;
}

}  // namespace

double free_energy_diff(const HermitianObservable& h0, const HermitianObservable& h_tau, double beta) {
  require_positive_beta(beta, "free_energy_diff");
  return (log_partition_function(h0, beta) - log_partition_function(h_tau, beta)) / beta;
}

double xi_factor(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                 const UnitaryPropagator& u, double beta) {
  require_positive_beta(beta, "xi_factor");
  if (h0.dim() != rho0.dim() || h_tau.dim() != rho0.dim() || u.dim() != rho0.dim()) {
    throw InvalidArgument("xi_factor: dimension mismatch");
  }
  const ComplexMatrix g_tau = spectral_exponential(h_tau, -beta, -log_partition_function(h_tau, beta));
  const ComplexMatrix g0_inverse = spectral_exponential(h0, beta, log_partition_function(h0, beta));
  const ComplexMatrix gamma = u.heisenberg(g_tau);
  return (gamma * g0_inverse * rho0.matrix()).trace().real();
}

double exponential_average(const WorkDistribution& dist, double beta, double delta_f) {
  double acc = 0.0;
  for (const auto& pt : dist.points) acc += pt.p * std::exp(-beta * (pt.w - delta_f));
  return acc;
}

double avg_entropy_production(const DensityMatrix& rho0, const HermitianObservable& h0,
                              const HermitianObservable& h_tau, const UnitaryPropagator& u, double beta,
                              Scheme scheme) {
  const double delta_f = free_energy_diff(h0, h_tau, beta);
  const auto dist = work_distribution(joint_table(scheme, rho0, h0, h_tau, u));
  return beta * (moments_from_distribution(dist, 1).mean() - delta_f);
}

double entropy_lr_mh(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                     const UnitaryPropagator& u, double beta) {
  const double mean_mh = analytic_moment_mh(rho0, h0, h_tau, u, 1);
  const ComplexMatrix evolved = u.heisenberg(h_tau.matrix());
  const ComplexMatrix commutator = h0.matrix() * evolved - evolved * h0.matrix();
  const double commutator_term = (rho0.matrix() * commutator).trace().real();
  const double trace_term = h0.trace_square() - h_tau.trace_square();
  return beta * mean_mh - 0.5 * beta * beta * commutator_term - 0.25 * beta * beta * trace_term;
}

double entropy_lr_tpm(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                      const UnitaryPropagator& u, double beta) {
  const auto ms = moments_from_distribution(work_distribution(tpm_joint(rho0, h0, h_tau, u)), 2);
  return 0.5 * beta * beta * ms.variance();
}

CumulantTruncation entropy_lr_cumulant(const WorkDistribution& dist, double beta, double xi) {
  if (!(xi > 0.0)) throw NonPositiveXi(xi);
  const auto ms = moments_from_distribution(dist, 3);
  CumulantTruncation out;
  out.value = 0.5 * beta * beta * ms.cumulant(2) - std::log(xi);
  out.next_term = std::abs(beta * beta * beta * ms.cumulant(3) / 6.0);
  return out;
}

double mh_negativity(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                     const UnitaryPropagator& u) {
  return mh_joint(rho0, h0, h_tau, u).min_entry();
}

EntropyReport entropy_report(const DensityMatrix& rho0, const HermitianObservable& h0,
                             const HermitianObservable& h_tau, const UnitaryPropagator& u, double beta) {
  EntropyReport r;
  r.beta = beta;
  r.delta_f = free_energy_diff(h0, h_tau, beta);

  const auto tpm_table = tpm_joint(rho0, h0, h_tau, u);
  const auto mh_table = mh_joint(rho0, h0, h_tau, u);
  const auto tpm = work_distribution(tpm_table);
  const auto mh = work_distribution(mh_table);

  r.mean_work_tpm = moments_from_distribution(tpm, 1).mean();
  r.mean_work_mh = moments_from_distribution(mh, 1).mean();
  r.sigma_tpm = beta * (r.mean_work_tpm - r.delta_f);
  r.sigma_mh = beta * (r.mean_work_mh - r.delta_f);
  r.xi = xi_factor(rho0, h0, h_tau, u, beta);
  r.exp_avg_tpm = exponential_average(tpm, beta, r.delta_f);
  r.exp_avg_mh = exponential_average(mh, beta, r.delta_f);
  r.mh_negativity = mh_table.min_entry();
  return r;
}

DensityMatrix thermal_coherent_qubit(double beta, double omega) {
  if (!std::isfinite(beta) || beta < 0.0) throw InvalidArgument("thermal_coherent_qubit: beta must be >= 0");
  if (!(omega >= 0.0 && omega <= 1.0)) throw InvalidArgument("thermal_coherent_qubit: omega must be in [0, 1]");
  // a^2 = e^beta / (2 cosh beta) = 1 / (1 + e^{-2 beta})
  const double alpha_sq = 1.0 / (1.0 + std::exp(-2.0 * beta));
  const double upper = 1.0 - alpha_sq;
  const double off = omega * std::sqrt(alpha_sq * upper);
  ComplexMatrix rho(2, 2);
  rho << upper, off, off, alpha_sq;
  return DensityMatrix(rho);
}

double entropy_lr_qubit_gap(const DensityMatrix& rho0, double k, double tau, double beta) {
  if (rho0.dim() != 2) throw InvalidArgument("entropy_lr_qubit_gap: qubit state required");
  const auto b = bloch(rho0, Eigenbasis::computational(2));
  const double upper_gibbs = 1.0 / (1.0 + std::exp(2.0 * beta));  // e^{-beta} / Z
  if (std::abs(0.5 * (1.0 - b.a_z) - upper_gibbs) > 1e-9) {
    throw InvalidArgument("entropy_lr_qubit_gap: state does not carry the Gibbs populations of sigma_z at beta");
  }
  return beta * k * std::sin(2.0 * tau) * std::cos(b.chi) * b.coherence;
}

double entropy_lr_qubit_closed_form(double beta, double k, double tau, double chi, double coherence) {
  const double c = std::cos(tau);
  const double b2 = beta * beta;
  return beta * k * std::sin(2.0 * tau) * std::cos(chi) * coherence - 2.0 * b2 * k * c * c + 0.5 * b2 * k * k +
         b2 * k + 0.5 * b2;
}

double entropy_lr_qubit_zero_crossing(double beta, double k, double tau, double chi) {
  const double slope = beta * k * std::sin(2.0 * tau) * std::cos(chi);
  if (slope == 0.0) throw InvalidArgument("entropy_lr_qubit_zero_crossing: no coherence dependence");
  return -entropy_lr_qubit_closed_form(beta, k, tau, chi, 0.0) / slope;
}

}  // namespace qwork
