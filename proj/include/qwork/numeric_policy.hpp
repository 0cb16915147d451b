#pragma once

namespace qwork {

// Every tolerance the library checks against lives here so callers can
// tighten or loosen all of them in one place.
struct NumericPolicy {
  double hermiticity_tol = 1e-9;   // max |H - H^dagger| accepted as Hermitian
  double trace_tol = 1e-10;        // |Tr rho - 1|
  double positivity_tol = 1e-10;   // smallest eigenvalue of a state >= -tol
  double unitarity_tol = 1e-10;    // max |U^dagger U - 1|
  double grouping_rel = 1e-8;      // degeneracy grouping, relative to max|H_ij|
  double binning_rel = 1e-9;       // work binning, relative to max|E|
  double normalization_tol = 1e-10;
};

inline constexpr NumericPolicy kDefaultPolicy{};

}  // namespace qwork
