#include "qwork/coherence.hpp"

#include <cmath>

#include "qwork/errors.hpp"

namespace qwork {

Eigenbasis::Eigenbasis(const ComplexMatrix& columns, const NumericPolicy& policy) : vectors_(columns) {
  require_square_finite(columns, "Eigenbasis");
  const double defect = max_abs(columns.adjoint() * columns - ComplexMatrix::Identity(dim(), dim()));
  if (defect > policy.unitarity_tol) {
    throw InvalidArgument("Eigenbasis: columns are not orthonormal");
  }
}

Eigenbasis Eigenbasis::of(const HermitianObservable& h) {
  return Eigenbasis(h.eigenvectors());
}

Eigenbasis Eigenbasis::computational(int dim) {
  return Eigenbasis(ComplexMatrix::Identity(dim, dim));
}

double l1_coherence(const DensityMatrix& rho, const Eigenbasis& basis) {
  if (rho.dim() != basis.dim()) throw InvalidArgument("l1_coherence: dimension mismatch");
  const ComplexMatrix r = basis.express(rho.matrix());
  double total = 0.0;
  for (int i = 0; i < r.rows(); ++i) {
    for (int j = 0; j < r.cols(); ++j) {
      if (i != j) total += std::abs(r(i, j));
    }
  }
  return total;
}

double l1_coherence(const DensityMatrix& rho, const HermitianObservable& h) {
  if (h.degenerate()) {
    throw AmbiguousBasis(
        "l1_coherence: reference Hamiltonian is degenerate; pass an explicit Eigenbasis");
  }
  return l1_coherence(rho, Eigenbasis::of(h));
}

DensityMatrix dephase(const DensityMatrix& rho, const HermitianObservable& h0) {
  if (rho.dim() != h0.dim()) throw InvalidArgument("dephase: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& level : h0.levels()) {
    out += level.projector * rho.matrix() * level.projector;
  }
  return DensityMatrix(out);
}

BlochDescriptor bloch(const DensityMatrix& rho, const Eigenbasis& basis) {
  if (rho.dim() != 2 || basis.dim() != 2) throw InvalidArgument("bloch: qubit state required");
  const ComplexMatrix r = basis.express(rho.matrix());
  BlochDescriptor b;
  b.a_x = 2.0 * r(1, 0).real();
  b.a_y = 2.0 * r(1, 0).imag();
  b.a_z = (r(1, 1) - r(0, 0)).real();
  b.coherence = std::abs(r(0, 1)) + std::abs(r(1, 0));
  b.chi = (b.a_x == 0.0 && b.a_y == 0.0) ? 0.0 : std::atan2(b.a_y, b.a_x);
  return b;
}

BlochDescriptor bloch(const DensityMatrix& rho, const HermitianObservable& basis) {
  if (basis.degenerate()) {
    throw AmbiguousBasis("bloch: reference Hamiltonian is degenerate; pass an explicit Eigenbasis");
  }
  return bloch(rho, Eigenbasis::of(basis));
}

DensityMatrix qubit_state(double a_x, double a_y, double a_z, const Eigenbasis& basis) {
  if (basis.dim() != 2) throw InvalidArgument("qubit_state: qubit basis required");
  ComplexMatrix r(2, 2);
  r << 1.0 - a_z, Complex(a_x, -a_y),  //
      Complex(a_x, a_y), 1.0 + a_z;
  r *= 0.5;
  return DensityMatrix(basis.vectors() * r * basis.vectors().adjoint());
}

}  // namespace qwork
