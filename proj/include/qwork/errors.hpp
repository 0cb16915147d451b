#pragma once

#include <stdexcept>
#include <string>

namespace qwork {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the inputs was violated (shape, domain, tolerance).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public InvalidArgument {
 public:
  NotHermitian(const std::string& what, double max_asymmetry)
      : InvalidArgument(what + " (max asymmetry " + std::to_string(max_asymmetry) + ")"),
        max_asymmetry_(max_asymmetry) {}
  double max_asymmetry() const noexcept { return max_asymmetry_; }

 private:
  double max_asymmetry_;
};

// l1 coherence requested in a degenerate basis without an explicit eigenvector choice.
class AmbiguousBasis : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NumericFailure : public Error {
 public:
  using Error::Error;
};

// A coherence target that the sampler could not realise with a valid state.
class InfeasibleTarget : public Error {
 public:
  InfeasibleTarget(const std::string& what, double target, double best_reachable)
      : Error(what), target_(target), best_reachable_(best_reachable) {}
  double target() const noexcept { return target_; }
  double best_reachable() const noexcept { return best_reachable_; }

 private:
  double target_;
  double best_reachable_;
};

// xi <= 0: -ln(xi) is undefined. Carries the raw value.
class NonPositiveXi : public Error {
 public:
  explicit NonPositiveXi(double xi)
      : Error("fluctuation factor xi = " + std::to_string(xi) + " is not positive; ln(xi) undefined"),
        xi_(xi) {}
  double xi() const noexcept { return xi_; }

 private:
  double xi_;
};

}  // namespace qwork
