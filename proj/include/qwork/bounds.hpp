#pragma once

#include <string_view>

#include "qwork/coherence.hpp"
#include "qwork/qmath.hpp"

namespace qwork {

// Differences between the MH and TPM work statistics of a cyclic process
// (H_0 = H_tau = H) and the coherence bounds on the first two.
struct GapReport {
  double gap_first = 0.0;     // <w>_MH - <w>_TPM
  double gap_second = 0.0;    // <w^2>_MH - <w^2>_TPM
  double gap_variance = 0.0;  // Var_MH - Var_TPM
  double bound_first = 0.0;
  double bound_second = 0.0;
  double coherence = 0.0;     // C_l1 used for both bounds
};

// (Tr|H| / 2) C_l1(rho0)
double theorem1_bound(const HermitianObservable& h, const DensityMatrix& rho0, const Eigenbasis& basis);
double theorem1_bound(const HermitianObservable& h, const DensityMatrix& rho0);

// (C_l1 / 2) (Tr H^2 + 2 max_k|h_k| Tr|H|)
double theorem2_bound(const HermitianObservable& h, const DensityMatrix& rho0, const Eigenbasis& basis);
double theorem2_bound(const HermitianObservable& h, const DensityMatrix& rho0);

// Coherence-independent factors of the two bounds.
double theorem1_slope(const HermitianObservable& h);
double theorem2_slope(const HermitianObservable& h);

// Moments from the TPM and MH work distributions of the cyclic process.
GapReport gap_report(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u,
                     const Eigenbasis& basis);
GapReport gap_report(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u);

/// Closed-form signed first-moment gap of a qubit under the angle family:
///   (h0 - h1) (C/2) sin(2 tau) cos(chi + phi2 - phi1),
/// with h0 = H(0,0), h1 = H(1,1), and C, chi read from rho0 in the
/// computational basis. H must be diagonal; U must carry qubit angles.
double qubit_first_moment_gap(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u);

/// Var_MH - Var_TPM for a qubit driven cyclically by the real rotation of
/// angle tau: -f [f + 2 sin^2(tau) a_z (h0 - h1)], f = (h0 - h1) C sin(2 tau) cos(chi) / 2,
/// where a_z = rho_11 - rho_00 (see BlochDescriptor). H must be diagonal.
double corollary1_variance_gap(const DensityMatrix& rho0, const HermitianObservable& h, double tau);

enum class VarianceOrdering { MhBelowTpm, MhAboveTpm, Equal };

std::string_view to_string(VarianceOrdering o);

// Width of the "equal" band around the roots a_x = 0 and a_x = -2 a_z tan(tau).
inline constexpr double kTable1BoundaryBand = 1e-12;

/// Sign region of Var_MH - Var_TPM for a pure real qubit (a_y = 0,
/// a_x^2 + a_z^2 = 1) under the real rotation of angle tau. Intervals are
/// half-open; points inside the boundary band of a root, and angles where
/// sin(2 tau) vanishes, classify as Equal.
VarianceOrdering table1_region(double a_x, double a_z, double tau);
// Also rejects a_y != 0.
VarianceOrdering table1_region(const BlochDescriptor& b, double tau);

}  // namespace qwork
