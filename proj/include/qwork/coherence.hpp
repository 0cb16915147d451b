#pragma once

#include "qwork/qmath.hpp"

namespace qwork {

/// An orthonormal reference basis for coherence, stored as the columns of a
/// unitary. Inside a degenerate eigenspace the l1 coherence depends on which
/// eigenvectors are chosen, so callers pick one explicitly through this type.
class Eigenbasis {
 public:
  explicit Eigenbasis(const ComplexMatrix& columns, const NumericPolicy& policy = kDefaultPolicy);

  // The sorted eigenvectors returned by spectral_decompose.
  static Eigenbasis of(const HermitianObservable& h);
  static Eigenbasis computational(int dim);

  int dim() const { return static_cast<int>(vectors_.rows()); }
  const ComplexMatrix& vectors() const { return vectors_; }
  // Matrix elements <i|A|j> in this basis.
  ComplexMatrix express(const ComplexMatrix& a) const { return vectors_.adjoint() * a * vectors_; }

 private:
  ComplexMatrix vectors_;
};

// sum_{i != j} |rho_ij| in the given basis.
double l1_coherence(const DensityMatrix& rho, const Eigenbasis& basis);

// Throws AmbiguousBasis when h is degenerate.
double l1_coherence(const DensityMatrix& rho, const HermitianObservable& h);

// Full dephasing sum_n P_n rho P_n over the grouped projectors of h0.
DensityMatrix dephase(const DensityMatrix& rho, const HermitianObservable& h0);

/// Qubit Bloch coordinates in the eigenframe of a reference Hamiltonian,
/// index 0 being the upper level h0. The parametrisation is
///
///   rho = 1/2 [[1 - a_z, a_x - i a_y], [a_x + i a_y, 1 + a_z]],
///
/// so a_z is the population excess of the lower level (positive for thermal
/// states at positive temperature) and a_x + i a_y = 2 rho_10.
struct BlochDescriptor {
  double a_x = 0.0;
  double a_y = 0.0;
  double a_z = 0.0;
  double coherence = 0.0;  // l1 coherence = sqrt(a_x^2 + a_y^2)
  double chi = 0.0;        // atan2(a_y, a_x); 0 at zero coherence
};

BlochDescriptor bloch(const DensityMatrix& rho, const HermitianObservable& basis);
BlochDescriptor bloch(const DensityMatrix& rho, const Eigenbasis& basis);

// Inverse of bloch(): the qubit state with these coordinates in the given frame.
DensityMatrix qubit_state(double a_x, double a_y, double a_z, const Eigenbasis& basis = Eigenbasis::computational(2));

}  // namespace qwork
