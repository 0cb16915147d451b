#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qwork/numeric_policy.hpp"

namespace qwork {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

double max_abs(const ComplexMatrix& m);

// max_ij |M_ij - conj(M_ji)|
double hermiticity_defect(const ComplexMatrix& m);

// Throws InvalidArgument unless m is non-empty, square and finite.
void require_square_finite(const ComplexMatrix& m, std::string_view what);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// One eigenspace of a Hermitian operator.
struct EnergyLevel {
  double energy = 0.0;
  ComplexMatrix projector;
  int multiplicity = 0;
};

/// A Hermitian operator together with its grouped spectral decomposition
/// H = sum_k h_k P_k. Eigenvalues closer than grouping_tol are merged into a
/// single level whose projector spans the whole eigenspace, so degenerate
/// levels yield subspace projectors rather than arbitrary rank-1 ones.
///
/// Levels and eigenvalues are sorted descending.
class HermitianObservable {
 public:
  // grouping_tol defaults to policy.grouping_rel * max|H_ij|.
  explicit HermitianObservable(const ComplexMatrix& h, std::optional<double> grouping_tol = {},
                               const NumericPolicy& policy = kDefaultPolicy);

  static HermitianObservable diagonal(const std::vector<double>& energies);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<EnergyLevel>& levels() const { return levels_; }
  int num_levels() const { return static_cast<int>(levels_.size()); }
  // Full spectrum with multiplicity, descending.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  // Orthonormal eigenvectors as columns, matching eigenvalues().
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  double grouping_tol() const { return grouping_tol_; }
  bool degenerate() const { return num_levels() < dim(); }

  double trace_abs() const;           // Tr|H|
  double trace_square() const;        // Tr H^2
  double max_abs_eigenvalue() const;  // max_k |h_k|
  double max_abs_energy() const { return max_abs_eigenvalue(); }
  ComplexMatrix reconstruct() const;  // sum_k h_k P_k

 private:
  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
  std::vector<EnergyLevel> levels_;
  double grouping_tol_ = 0.0;
};

HermitianObservable spectral_decompose(const ComplexMatrix& h, std::optional<double> grouping_tol = {},
                                       const NumericPolicy& policy = kDefaultPolicy);

/// Unit-trace positive semidefinite matrix. Validated on construction; the
/// stored matrix is the Hermitian part of the input.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& rho, const NumericPolicy& policy = kDefaultPolicy);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }
  double min_eigenvalue() const;

 private:
  ComplexMatrix rho_;
};

// Angles of the qubit family
//   e^{i phi/2} [[ e^{i phi1} cos tau, e^{i phi2} sin tau],
//                [-e^{-i phi2} sin tau, e^{-i phi1} cos tau]].
struct QubitAngles {
  double tau = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phase = 0.0;
};

class UnitaryPropagator {
 public:
  explicit UnitaryPropagator(const ComplexMatrix& u, const NumericPolicy& policy = kDefaultPolicy);

  static UnitaryPropagator identity(int dim);

  int dim() const { return static_cast<int>(u_.rows()); }
  const ComplexMatrix& matrix() const { return u_; }
  const std::optional<QubitAngles>& qubit_params() const { return qubit_; }

  // U^dagger A U
  ComplexMatrix heisenberg(const ComplexMatrix& a) const;
  // max |U^dagger U - 1|
  double unitarity_defect() const;

 private:
  friend UnitaryPropagator qubit_unitary(double, double, double, double);
  ComplexMatrix u_;
  std::optional<QubitAngles> qubit_;
};

UnitaryPropagator qubit_unitary(double tau, double phi1, double phi2, double phase = 0.0);

// The real rotation [[cos t, sin t], [-sin t, cos t]].
inline UnitaryPropagator real_rotation(double tau) { return qubit_unitary(tau, 0.0, 0.0, 0.0); }

struct GibbsState {
  DensityMatrix state;
  double partition_function;  // may be +inf when beta*|h_min| overflows
  double log_partition;       // always finite
};

// Natural log of Tr exp(-beta H), evaluated with a max shift.
double log_partition_function(const HermitianObservable& h, double beta);

GibbsState gibbs_state(const HermitianObservable& h, double beta);

}  // namespace qwork
