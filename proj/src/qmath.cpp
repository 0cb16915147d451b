#include "qwork/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qwork/errors.hpp"

namespace qwork {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

void require_square_finite(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
  }
}

ComplexMatrix pauli_x() {
  ComplexMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

ComplexMatrix pauli_y() {
  ComplexMatrix s(2, 2);
  s << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return s;
}

ComplexMatrix pauli_z() {
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

// ---------------------------------------------------------------------------
// HermitianObservable

HermitianObservable::HermitianObservable(const ComplexMatrix& h, std::optional<double> grouping_tol,
                                         const NumericPolicy& policy) {
  require_square_finite(h, "spectral_decompose");
  const double asym = hermiticity_defect(h);
  if (asym > policy.hermiticity_tol) {
    throw NotHermitian("spectral_decompose: input is not Hermitian", asym);
  }
  if (grouping_tol && !(*grouping_tol > 0.0)) {
    throw InvalidArgument("spectral_decompose: grouping_tol must be positive");
  }
  matrix_ = 0.5 * (h + h.adjoint());
  grouping_tol_ = grouping_tol.value_or(
      std::max(policy.grouping_rel * max_abs(matrix_), std::numeric_limits<double>::min()));

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    throw NumericFailure("spectral_decompose: eigensolver did not converge");
  }
  // Eigen returns ascending order.
  const int d = dim();
  eigenvalues_ = solver.eigenvalues().reverse();
  eigenvectors_ = solver.eigenvectors().rowwise().reverse();

  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i < d && eigenvalues_(i - 1) - eigenvalues_(i) <= grouping_tol_) continue;
    EnergyLevel level;
    level.multiplicity = i - start;
    const auto block = eigenvectors_.middleCols(start, level.multiplicity);
    level.projector = block * block.adjoint();
    level.energy = eigenvalues_.segment(start, level.multiplicity).mean();
    levels_.push_back(std::move(level));
    start = i;
  }
}

HermitianObservable HermitianObservable::diagonal(const std::vector<double>& energies) {
  RealVector e = Eigen::Map<const RealVector>(energies.data(), static_cast<Eigen::Index>(energies.size()));
  return HermitianObservable(e.cast<Complex>().asDiagonal().toDenseMatrix());
}

double HermitianObservable::trace_abs() const {
  return eigenvalues_.cwiseAbs().sum();
}

double HermitianObservable::trace_square() const {
  return eigenvalues_.squaredNorm();
}

double HermitianObservable::max_abs_eigenvalue() const {
  return eigenvalues_.cwiseAbs().maxCoeff();
}

ComplexMatrix HermitianObservable::reconstruct() const {
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (const auto& level : levels_) out += level.energy * level.projector;
  return out;
}

HermitianObservable spectral_decompose(const ComplexMatrix& h, std::optional<double> grouping_tol,
                                       const NumericPolicy& policy) {
  return HermitianObservable(h, grouping_tol, policy);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(const ComplexMatrix& rho, const NumericPolicy& policy) {
  require_square_finite(rho, "DensityMatrix");
  const double asym = hermiticity_defect(rho);
  if (asym > policy.hermiticity_tol) {
    throw NotHermitian("DensityMatrix: state is not Hermitian", asym);
  }
  rho_ = 0.5 * (rho + rho.adjoint());
  const double trace = rho_.trace().real();
  if (std::abs(trace - 1.0) > policy.trace_tol) {
    throw InvalidArgument("DensityMatrix: trace " + std::to_string(trace) + " differs from 1");
  }
  const double lambda_min = min_eigenvalue();
  if (lambda_min < -policy.positivity_tol) {
    throw InvalidArgument("DensityMatrix: negative eigenvalue " + std::to_string(lambda_min));
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidArgument("DensityMatrix::pure: zero vector");
  const ComplexVector v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw InvalidArgument("DensityMatrix::maximally_mixed: dim < 1");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

// ---------------------------------------------------------------------------
// UnitaryPropagator

UnitaryPropagator::UnitaryPropagator(const ComplexMatrix& u, const NumericPolicy& policy) : u_(u) {
  require_square_finite(u, "UnitaryPropagator");
  const double defect = unitarity_defect();
  if (defect > policy.unitarity_tol) {
    throw InvalidArgument("UnitaryPropagator: U^dagger U deviates from identity by " + std::to_string(defect));
  }
}

UnitaryPropagator UnitaryPropagator::identity(int dim) {
  return UnitaryPropagator(ComplexMatrix::Identity(dim, dim));
}

ComplexMatrix UnitaryPropagator::heisenberg(const ComplexMatrix& a) const {
  return u_.adjoint() * a * u_;
}

double UnitaryPropagator::unitarity_defect() const {
  return max_abs(u_.adjoint() * u_ - ComplexMatrix::Identity(dim(), dim()));
}

UnitaryPropagator qubit_unitary(double tau, double phi1, double phi2, double phase) {
  const Complex i(0.0, 1.0);
  const double c = std::cos(tau);
  const double s = std::sin(tau);
  ComplexMatrix u(2, 2);
  u << std::exp(i * phi1) * c, std::exp(i * phi2) * s,  //
      -std::exp(-i * phi2) * s, std::exp(-i * phi1) * c;
  u *= std::exp(i * (phase / 2.0));
  UnitaryPropagator out(u);
  out.qubit_ = QubitAngles{tau, phi1, phi2, phase};
  return out;
}

// ---------------------------------------------------------------------------
// Gibbs states

double log_partition_function(const HermitianObservable& h, double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw InvalidArgument("gibbs: beta must be finite and non-negative");
  }
  // Shift by the smallest energy so the largest exponent is zero.
  const double e_min = h.levels().back().energy;
  double sum = 0.0;
  for (const auto& level : h.levels()) {
    sum += level.multiplicity * std::exp(-beta * (level.energy - e_min));
  }
  return -beta * e_min + std::log(sum);
}

GibbsState gibbs_state(const HermitianObservable& h, double beta) {
  const double log_z = log_partition_function(h, beta);
  ComplexMatrix g = ComplexMatrix::Zero(h.dim(), h.dim());
  for (const auto& level : h.levels()) {
    g += std::exp(-beta * level.energy - log_z) * level.projector;
  }
  // Renormalise away the rounding in exp/log so the trace is 1 to machine precision.
  g /= g.trace().real();
  return GibbsState{DensityMatrix(g), std::exp(log_z), log_z};
}

}  // namespace qwork
