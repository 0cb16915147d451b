#include "qwork/bounds.hpp"

#include <cmath>

#include "qwork/errors.hpp"
#include "qwork/workstats.hpp"

namespace qwork {

namespace {

void require_diagonal_qubit(const HermitianObservable& h, std::string_view what) {
  if (h.dim() != 2) throw InvalidArgument(std::string(what) + ": qubit Hamiltonian required");
  if (std::abs(h.matrix()(0, 1)) > h.grouping_tol()) {
    throw InvalidArgument(std::string(what) + ": Hamiltonian must be diagonal in the computational basis");
  }
}

int sign(double x) {
  return (x > 0.0) - (x < 0.0);
}

}  // namespace

double theorem1_slope(const HermitianObservable& h) {
  return 0.5 * h.trace_abs();
}

double theorem2_slope(const HermitianObservable& h) {
  return 0.5 * (h.trace_square() + 2.0 * h.max_abs_eigenvalue() * h.trace_abs());
}

double theorem1_bound(const HermitianObservable& h, const DensityMatrix& rho0, const Eigenbasis& basis) {
  return theorem1_slope(h) * l1_coherence(rho0, basis);
}

double theorem1_bound(const HermitianObservable& h, const DensityMatrix& rho0) {
  return theorem1_slope(h) * l1_coherence(rho0, h);
}

double theorem2_bound(const HermitianObservable& h, const DensityMatrix& rho0, const Eigenbasis& basis) {
  return theorem2_slope(h) * l1_coherence(rho0, basis);
}

double theorem2_bound(const HermitianObservable& h, const DensityMatrix& rho0) {
  return theorem2_slope(h) * l1_coherence(rho0, h);
}

GapReport gap_report(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u,
                     const Eigenbasis& basis) {
  const auto tpm = moments_from_distribution(work_distribution(tpm_joint(rho0, h, h, u)), 2);
  const auto mh = moments_from_distribution(work_distribution(mh_joint(rho0, h, h, u)), 2);
  GapReport r;
  r.gap_first = mh.mean() - tpm.mean();
  r.gap_second = mh.second() - tpm.second();
  r.gap_variance = mh.variance() - tpm.variance();
  r.coherence = l1_coherence(rho0, basis);
  r.bound_first = theorem1_slope(h) * r.coherence;
  r.bound_second = theorem2_slope(h) * r.coherence;
  return r;
}

GapReport gap_report(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u) {
  if (h.degenerate()) {
    throw AmbiguousBasis("gap_report: degenerate Hamiltonian; pass an explicit Eigenbasis");
  }
  return gap_report(rho0, h, u, Eigenbasis::of(h));
}

double qubit_first_moment_gap(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u) {
  require_diagonal_qubit(h, "qubit_first_moment_gap");
  const auto& angles = u.qubit_params();
  if (!angles) throw InvalidArgument("qubit_first_moment_gap: unitary has no qubit angle parameters");
  const auto b = bloch(rho0, Eigenbasis::computational(2));
  const double h0 = h.matrix()(0, 0).real();
  const double h1 = h.matrix()(1, 1).real();
  return (h0 - h1) * 0.5 * b.coherence * std::sin(2.0 * angles->tau) *
         std::cos(b.chi + angles->phi2 - angles->phi1);
}

double corollary1_variance_gap(const DensityMatrix& rho0, const HermitianObservable& h, double tau) {
  require_diagonal_qubit(h, "corollary1_variance_gap");
  if (rho0.dim() != 2) throw InvalidArgument("corollary1_variance_gap: qubit state required");
  const auto b = bloch(rho0, Eigenbasis::computational(2));
  const double h0 = h.matrix()(0, 0).real();
  const double h1 = h.matrix()(1, 1).real();
  const double f = (h0 - h1) * b.coherence * std::sin(2.0 * tau) * std::cos(b.chi) / 2.0;
  const double s = std::sin(tau);
  return -f * (f + 2.0 * s * s * b.a_z * (h0 - h1));
}

std::string_view to_string(VarianceOrdering o) {
  switch (o) {
    case VarianceOrdering::MhBelowTpm:
      return "MH<=TPM";
    case VarianceOrdering::MhAboveTpm:
      return "MH>=TPM";
    case VarianceOrdering::Equal:
      return "equal";
  }
  return "?";
}

VarianceOrdering table1_region(double a_x, double a_z, double tau) {
  if (std::abs(a_x * a_x + a_z * a_z - 1.0) > 1e-9) {
    throw InvalidArgument("table1_region: Bloch vector must be pure (a_x^2 + a_z^2 = 1)");
  }
  if (std::abs(std::sin(2.0 * tau)) <= kTable1BoundaryBand) return VarianceOrdering::Equal;

  const double t = std::tan(tau);
  const double root = -2.0 * a_z * t;
  if (std::abs(a_x) <= kTable1BoundaryBand || std::abs(a_x - root) <= kTable1BoundaryBand) {
    return VarianceOrdering::Equal;
  }
  if (sign(a_z) == sign(t)) {
    // root <= 0: [-1, root] below, [root, 0] above, [0, 1] below
    if (a_x < root) return VarianceOrdering::MhBelowTpm;
    if (a_x < 0.0) return VarianceOrdering::MhAboveTpm;
    return VarianceOrdering::MhBelowTpm;
  }
  // root >= 0: [-1, 0] below, [0, root] above, [root, 1] below
  if (a_x < 0.0) return VarianceOrdering::MhBelowTpm;
  if (a_x < root) return VarianceOrdering::MhAboveTpm;
  return VarianceOrdering::MhBelowTpm;
}

VarianceOrdering table1_region(const BlochDescriptor& b, double tau) {
  if (std::abs(b.a_y) > 1e-9) throw InvalidArgument("table1_region: a_y must vanish");
  return table1_region(b.a_x, b.a_z, tau);
}

}  // namespace qwork
