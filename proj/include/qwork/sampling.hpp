#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qwork/coherence.hpp"
#include "qwork/qmath.hpp"

namespace qwork {

struct RandomSpec {
  std::uint64_t seed = 0;
  int dim = 2;
  int n_samples = 1;
};

// Decorrelated child seed for grid point `index` (splitmix64 finaliser over
// seed and index), so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic source of random matrices and states. Two streams built from
/// the same seed yield bit-identical draws.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  // Entries i.i.d. (N(0,1) + i N(0,1)) / sqrt(2).
  ComplexMatrix ginibre(int rows, int cols);
  // Haar unitary: QR of a Ginibre matrix with the phases of diag(R) divided out.
  UnitaryPropagator haar_unitary(int dim);
  // GUE-distributed Hermitian matrix.
  ComplexMatrix gue(int dim);
  // W W^dagger / Tr with W a dim x rank Ginibre matrix; rank = dim gives the
  // Hilbert-Schmidt ensemble, rank = 1 Haar-random pure states.
  DensityMatrix density_matrix(int dim, int rank);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// First unitary of the stream seeded with spec.seed.
UnitaryPropagator haar_unitary(const RandomSpec& spec);

// Largest l1 coherence a state of this dimension can carry (d - 1).
inline double max_l1_coherence(int dim) { return dim - 1.0; }

// Up to this many attempts are made before a target is declared infeasible.
inline constexpr int kCoherenceAttempts = 50;

/// Random state whose l1 coherence in `basis` equals c_target (to 1e-6).
///
/// Each attempt draws a random pure state, keeps its populations as the
/// diagonal and rescales the off-diagonal block by t = c_target / C(psi).
/// With t <= 1 the result is t |psi><psi| + (1 - t) D(|psi><psi|), a valid
/// state. Attempts whose pure state is not coherent enough are retried with
/// populations pulled progressively toward uniform, the maximally coherent
/// case reached on the final attempt. Throws InfeasibleTarget when
/// c_target lies outside [0, d - 1].
DensityMatrix random_state_with_coherence(int dim, double c_target, const Eigenbasis& basis, const RandomSpec& spec);

enum class MomentOrder { First, Second };

std::string_view to_string(MomentOrder o);
MomentOrder moment_order_from_string(std::string_view s);

// MH - TPM gap of the requested moment for the cyclic process (H, U), using
// the operator forms of the first two moments.
double cyclic_moment_gap(const DensityMatrix& rho0, const HermitianObservable& h, const UnitaryPropagator& u,
                         MomentOrder order);

struct GapSearchResult {
  double best_gap = 0.0;  // max |gap|
  UnitaryPropagator best_unitary = UnitaryPropagator::identity(1);
  int samples_evaluated = 0;
  bool closed_form_won = false;
};

/// Random search for max_U |gap| over spec.n_samples Haar unitaries drawn
/// sequentially from spec.seed, so a longer run extends a shorter one and the
/// result is nondecreasing in n_samples. For qubits the analytic optimum
/// (tau = pi/4, phi2 - phi1 = -chi in the eigenframe of H) is also evaluated.
GapSearchResult max_gap_over_unitaries(const DensityMatrix& rho0, const HermitianObservable& h, MomentOrder order,
                                       const RandomSpec& spec);

struct CoherenceGapResult {
  double c_target = 0.0;
  double c_actual = 0.0;  // coherence of the state that gave best_gap
  double best_gap = 0.0;
  int states = 0;
};

/// Largest |gap| found over `states` random states of coherence c_target in
/// `basis`, each searched with spec.n_samples Haar unitaries. State j is drawn
/// from derive_seed(spec.seed, 2j) and its unitaries from
/// derive_seed(spec.seed, 2j + 1).
///
/// Several states are needed when H is degenerate: coherence inside a
/// degenerate eigenspace does not enter the gap, so a single state of given
/// C can sit far below the best one.
CoherenceGapResult max_gap_at_coherence(const HermitianObservable& h, const Eigenbasis& basis, double c_target,
                                        MomentOrder order, int states, const RandomSpec& spec);

}  // namespace qwork
