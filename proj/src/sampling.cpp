#include "qwork/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qwork/errors.hpp"

namespace qwork {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SampleStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SampleStream::normal() {
  return normal_(engine_);
}

ComplexMatrix SampleStream::ginibre(int rows, int cols) {
  ComplexMatrix z(rows, cols);
  const double scale = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal();
      const double im = normal();
      z(i, j) = Complex(re, im) * scale;
    }
  }
  return z;
}

UnitaryPropagator SampleStream::haar_unitary(int dim) {
  if (dim < 1) throw InvalidArgument("haar_unitary: dim must be >= 1");
  const ComplexMatrix z = ginibre(dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const double mod = std::abs(r(j, j));
    const Complex phase = mod > 0.0 ? r(j, j) / mod : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return UnitaryPropagator(q);
}

ComplexMatrix SampleStream::gue(int dim) {
  const ComplexMatrix z = ginibre(dim, dim);
  return 0.5 * (z + z.adjoint());
}

DensityMatrix SampleStream::density_matrix(int dim, int rank) {
  if (rank < 1 || rank > dim) throw InvalidArgument("density_matrix: rank must be in [1, dim]");
  const ComplexMatrix w = ginibre(dim, rank);
  ComplexMatrix rho = w * w.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

UnitaryPropagator haar_unitary(const RandomSpec& spec) {
  if (spec.dim < 2) throw InvalidArgument("haar_unitary: dim must be >= 2");
  SampleStream stream(spec.seed);
  return stream.haar_unitary(spec.dim);
}

DensityMatrix random_state_with_coherence(int dim, double c_target, const Eigenbasis& basis, const RandomSpec& spec) {
  if (basis.dim() != dim) throw InvalidArgument("random_state_with_coherence: basis dimension mismatch");
  const double c_max = max_l1_coherence(dim);
  if (!(c_target >= 0.0) || c_target > c_max + 1e-12) {
    throw InfeasibleTarget("random_state_with_coherence: target " + std::to_string(c_target) +
                               " outside [0, " + std::to_string(c_max) + "]",
                           c_target, c_max);
  }
  constexpr double kSlack = 1e-9;
  SampleStream stream(spec.seed);
  double best = 0.0;
  for (int attempt = 0; attempt < kCoherenceAttempts; ++attempt) {
    const double pull = static_cast<double>(attempt) / (kCoherenceAttempts - 1);
    // Flat Dirichlet populations, mixed toward uniform as attempts fail.
    RealVector p(dim);
    for (int i = 0; i < dim; ++i) p(i) = -std::log1p(-stream.uniform());
    p /= p.sum();
    p = (1.0 - pull) * p + RealVector::Constant(dim, pull / dim);

    ComplexVector psi(dim);
    for (int i = 0; i < dim; ++i) {
      const double theta = stream.uniform(0.0, 2.0 * std::numbers::pi);
      psi(i) = std::sqrt(p(i)) * std::exp(Complex(0.0, theta));
    }
    ComplexMatrix pure = psi * psi.adjoint();
    double c_pure = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i != j) c_pure += std::abs(pure(i, j));
      }
    }
    best = std::max(best, c_pure);
    if (c_pure + kSlack < c_target) continue;

    const double t = c_pure > 0.0 ? std::min(1.0, c_target / c_pure) : 0.0;
    ComplexMatrix in_basis = t * pure;
    in_basis.diagonal() = pure.diagonal();
    DensityMatrix rho(basis.vectors() * in_basis * basis.vectors().adjoint());
    if (std::abs(l1_coherence(rho, basis) - c_target) <= 1e-6) return rho;
  }
  throw InfeasibleTarget("random_state_with_coherence: target " + std::to_string(c_target) + " not reached after " +
                             std::to_string(kCoherenceAttempts) + " attempts",
                         c_target, best);
}

std::string_view to_string(MomentOrder o) {
  return o == MomentOrder::First ? "first" : "second";
}

MomentOrder moment_order_from_string(std::string_view s) {
  if (s == "first" || s == "1") return MomentOrder::First;
  if (s == "second" || s == "2") return MomentOrder::Second;
  throw InvalidArgument("unknown moment order '" + std::string(s) + "' (expected first|second)");
}

namespace {

ComplexMatrix coherent_part(const DensityMatrix& rho0, const HermitianObservable& h) {
  ComplexMatrix diag_part = ComplexMatrix::Zero(h.dim(), h.dim());
  for (const auto& level : h.levels()) diag_part += level.projector * rho0.matrix() * level.projector;
  return rho0.matrix() - diag_part;
}

// Re Tr[X f(U^dagger H U)] where X = rho - D(rho).
double gap_from_coherent_part(const ComplexMatrix& coherent, const HermitianObservable& h, const ComplexMatrix& u,
                              MomentOrder order) {
  const ComplexMatrix evolved = u.adjoint() * h.matrix() * u;
  if (order == MomentOrder::First) {
    return coherent.transpose().cwiseProduct(evolved).sum().real();
  }
  const ComplexMatrix diff = evolved - h.matrix();
  const ComplexMatrix sq = diff * diff;
  return coherent.transpose().cwiseProduct(sq).sum().real();
}

}  // namespace

double cyclic_moment_gap(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u,
                         MomentOrder order) {
  if (rho0.dim() != h.dim() || u.dim() != h.dim()) throw InvalidArgument("cyclic_moment_gap: dimension mismatch");
  return gap_from_coherent_part(coherent_part(rho0, h), h, u.matrix(), order);
}

GapSearchResult max_gap_over_unitaries(const DensityMatrix& rho0, const HermitianObservable& h, MomentOrder order,
                                       const RandomSpec& spec) {
  if (rho0.dim() != h.dim()) throw InvalidArgument("max_gap_over_unitaries: dimension mismatch");
  if (spec.n_samples < 1) throw InvalidArgument("max_gap_over_unitaries: n_samples must be >= 1");
  const int d = h.dim();
  const ComplexMatrix coherent = coherent_part(rho0, h);

  SampleStream stream(spec.seed);
  GapSearchResult result;
  result.best_gap = -1.0;
  for (int k = 0; k < spec.n_samples; ++k) {
    UnitaryPropagator u = stream.haar_unitary(d);
    const double gap = std::abs(gap_from_coherent_part(coherent, h, u.matrix(), order));
    if (gap > result.best_gap) {
      result.best_gap = gap;
      result.best_unitary = std::move(u);
    }
  }
  result.samples_evaluated = spec.n_samples;

  if (d == 2 && !h.degenerate()) {
    const auto b = bloch(rho0, Eigenbasis::of(h));
    const ComplexMatrix& frame = h.eigenvectors();
    const ComplexMatrix optimum =
        frame * qubit_unitary(std::numbers::pi / 4.0, 0.0, -b.chi, 0.0).matrix() * frame.adjoint();
    const double gap = std::abs(gap_from_coherent_part(coherent, h, optimum, order));
    if (gap > result.best_gap) {
      result.best_gap = gap;
      result.best_unitary = UnitaryPropagator(optimum);
      result.closed_form_won = true;
    }
  }
  return result;
}

CoherenceGapResult max_gap_at_coherence(const HermitianObservable& h, const Eigenbasis& basis, double c_target,
                                        MomentOrder order, int states, const RandomSpec& spec) {
  if (states < 1) throw InvalidArgument("max_gap_at_coherence: states must be >= 1");
  CoherenceGapResult out;
  out.c_target = c_target;
  out.states = states;
  out.best_gap = -1.0;
  for (int j = 0; j < states; ++j) {
    const auto idx = static_cast<std::uint64_t>(j);
    const auto rho = random_state_with_coherence(h.dim(), c_target, basis,
                                                 {.seed = derive_seed(spec.seed, 2 * idx), .dim = h.dim()});
    const auto r = max_gap_over_unitaries(
        rho, h, order, {.seed = derive_seed(spec.seed, 2 * idx + 1), .dim = h.dim(), .n_samples = spec.n_samples});
    if (r.best_gap > out.best_gap) {
      out.best_gap = r.best_gap;
      out.c_actual = l1_coherence(rho, basis);
    }
  }
  return out;
}

}  // namespace qwork
