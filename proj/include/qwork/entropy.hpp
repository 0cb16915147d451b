#pragma once

#include "qwork/qmath.hpp"
#include "qwork/workstats.hpp"

namespace qwork {

// beta^-1 ln(Z_0 / Z_tau). Throws InvalidArgument unless beta > 0.
double free_energy_diff(const HermitianObservable& h0, const HermitianObservable& h_tau, double beta);

/// xi = Re Tr[U^dagger G_tau U G_0^{-1} rho0], evaluated with explicit
/// operators (not through the work distribution). Equals 1 for rho0 = G_0.
double xi_factor(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                 const UnitaryPropagator& u, double beta);

// sum_k p_k exp(-beta (w_k - dF)), with signed MH weights.
double exponential_average(const WorkDistribution& dist, double beta, double delta_f);

// beta (<w>_scheme - dF)
double avg_entropy_production(const DensityMatrix& rho0, const HermitianObservable& h0,
                              const HermitianObservable& h_tau, const UnitaryPropagator& u, double beta,
                              Scheme scheme);

/// Linear-response MH entropy production:
///   beta <w>_MH - beta^2/2 Re Tr(rho0 [H_0, U^dagger H_tau U]) - beta^2/4 Tr[H_0^2 - H_tau^2].
/// No smallness check on beta is made.
double entropy_lr_mh(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                     const UnitaryPropagator& u, double beta);

// beta^2 Var_TPM / 2
double entropy_lr_tpm(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                      const UnitaryPropagator& u, double beta);

struct CumulantTruncation {
  double value = 0.0;       // beta^2 kappa2 / 2 - ln xi
  double next_term = 0.0;   // |beta^3 kappa3 / 6|, the size of the first dropped term
};

// Cumulant series of the entropy production truncated after kappa^(2).
// Throws NonPositiveXi when xi <= 0.
CumulantTruncation entropy_lr_cumulant(const WorkDistribution& dist, double beta, double xi);

// min_{m,n} of the MH joint table.
double mh_negativity(const DensityMatrix& rho0, const HermitianObservable& h0, const HermitianObservable& h_tau,
                     const UnitaryPropagator& u);

struct EntropyReport {
  double beta = 0.0;
  double delta_f = 0.0;
  double mean_work_tpm = 0.0;
  double mean_work_mh = 0.0;
  double sigma_tpm = 0.0;
  double sigma_mh = 0.0;
  double xi = 0.0;
  double exp_avg_tpm = 0.0;  // <exp(-beta (w - dF))>_TPM
  double exp_avg_mh = 0.0;   // <exp(-beta (w - dF))>_MH
  double mh_negativity = 0.0;
};

EntropyReport entropy_report(const DensityMatrix& rho0, const HermitianObservable& h0,
                             const HermitianObservable& h_tau, const UnitaryPropagator& u, double beta);

// ---------------------------------------------------------------------------
// Qubit family with H_0 = sigma_z.

/// rho = [[1 - a^2, w a sqrt(1 - a^2)], [w a sqrt(1 - a^2), a^2]] with
/// a^2 = e^{beta} / Tr e^{-beta sigma_z}: thermal populations of sigma_z
/// (the lower level, index 1, holds a^2) plus a real coherence scaled by
/// omega in [0, 1]. Its l1 coherence is omega / cosh(beta).
DensityMatrix thermal_coherent_qubit(double beta, double omega);

/// Linear-response gap Sigma_MH^LR - Sigma_TPM^LR = beta k sin(2 tau) cos(chi) C
/// for H_0 = sigma_z, H_tau = k sigma_z and the real rotation of angle tau.
/// rho0 must carry the Gibbs populations of sigma_z at beta.
double entropy_lr_qubit_gap(const DensityMatrix& rho0, double k, double tau, double beta);

/// Sigma_MH^LR for the same qubit setting after replacing a_z by beta:
///   beta k sin(2 tau) cos(chi) C - 2 beta^2 k cos^2(tau) + beta^2 k^2/2 + beta^2 k + beta^2/2.
double entropy_lr_qubit_closed_form(double beta, double k, double tau, double chi, double coherence);

// Coherence at which entropy_lr_qubit_closed_form changes sign.
double entropy_lr_qubit_zero_crossing(double beta, double k, double tau, double chi);

}  // namespace qwork
