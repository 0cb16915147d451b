// Acceptance run: one PASS/FAIL line per criterion, followed by the measured
// quantities it was decided on.
//
// Usage: qwork_acceptance <path-to-qwork-binary> [--known-deviation ACn]...
// The exit status is 0 when every criterion passes or fails only as a listed
// known deviation. Known deviations are still printed as FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qwork/bounds.hpp"
#include "qwork/cli/commands.hpp"
#include "qwork/coherence.hpp"
#include "qwork/entropy.hpp"
#include "qwork/sampling.hpp"
#include "qwork/workstats.hpp"

using namespace qwork;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

MomentSet moments(Scheme s, const DensityMatrix& rho, const HermitianObservable& h0, const HermitianObservable& ht,
                  const UnitaryPropagator& u) {
  return moments_from_distribution(work_distribution(joint_table(s, rho, h0, ht, u)), 2);
}

// Qubit tightness of the first-moment bound: the gap at the analytic optimum reaches the bound.
Outcome ac1() {
  Timer timer;
  const auto z = spectral_decompose(pauli_z());
  SampleStream s(derive_seed(kSeed, 1));
  double worst = 0.0;
  int closed_form = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const auto rho = s.density_matrix(2, 1 + i % 2);
    const auto best = max_gap_over_unitaries(rho, z, MomentOrder::First, {.seed = s.engine()(), .dim = 2, .n_samples = 1});
    closed_form += best.closed_form_won ? 1 : 0;
    const double gap = std::abs(moments(Scheme::MH, rho, z, z, best.best_unitary).mean() -
                                moments(Scheme::TPM, rho, z, z, best.best_unitary).mean());
    worst = std::max(worst, std::abs(gap - theorem1_bound(z, rho)));
  }
  const double t = timer.seconds();
  return {worst <= 1e-8 && t < 5.0, "max |gap - bound| = " + fmt(worst) + " over " + std::to_string(n) +
                                        " states (analytic optimum chosen " + std::to_string(closed_form) +
                                        " times), " + fmt(t) + " s"};
}

// First- and second-moment bounds on random cyclic processes in d = 2..5.
Outcome ac2() {
  Timer timer;
  long violations = 0, total = 0;
  double worst = -1e300;
  for (int d = 2; d <= 5; ++d) {
    SampleStream s(derive_seed(kSeed, 20 + static_cast<std::uint64_t>(d)));
    for (int i = 0; i < 100000; ++i) {
      const auto h = spectral_decompose(s.gue(d));
      const auto rho = s.density_matrix(d, 1 + i % d);
      const auto u = s.haar_unitary(d);
      const auto r = gap_report(rho, h, u);
      const double excess = std::max(std::abs(r.gap_first) - r.bound_first, std::abs(r.gap_second) - r.bound_second);
      worst = std::max(worst, excess);
      violations += excess > 1e-9 ? 1 : 0;
      ++total;
    }
  }
  const double t = timer.seconds();
  return {violations == 0 && t < 60.0, std::to_string(violations) + " violations in " + std::to_string(total) +
                                           " instances, max(|gap| - bound) = " + fmt(worst) + ", " + fmt(t) + " s"};
}

// Second moments coincide for every cyclic qubit process.
Outcome ac3() {
  SampleStream s(derive_seed(kSeed, 3));
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const auto h = spectral_decompose(s.gue(2));
    const auto rho = s.density_matrix(2, 1 + i % 2);
    const auto u = s.haar_unitary(2);
    worst = std::max(worst, std::abs(moments(Scheme::MH, rho, h, h, u).second() -
                                     moments(Scheme::TPM, rho, h, h, u).second()));
  }
  return {worst <= 1e-10, "max |<w^2>_MH - <w^2>_TPM| = " + fmt(worst) + " over 1e5 instances"};
}

// Qubit variance gap: closed form, sign regions and the a_x = +-1 endpoint.
Outcome ac4() {
  double worst_closed = 0.0, worst_endpoint = 0.0;
  long misclassified = 0, classified = 0;
  const double h0 = 1.3, h1 = -0.4;
  const auto h = HermitianObservable::diagonal({h0, h1});
  const auto xs = cli::linspace(-1.0, 1.0, 200);
  const auto taus = cli::linspace(-kPi, kPi, 50);
  for (double tau : taus) {
    const auto u = real_rotation(tau);
    for (double ax : xs) {
      for (double sign : {1.0, -1.0}) {
        const double az = sign * std::sqrt(std::max(0.0, 1.0 - ax * ax));
        const auto rho = qubit_state(ax, 0.0, az);
        const double gap = moments(Scheme::MH, rho, h, h, u).variance() - moments(Scheme::TPM, rho, h, h, u).variance();
        worst_closed = std::max(worst_closed, std::abs(gap - corollary1_variance_gap(rho, h, tau)));
        if (std::abs(ax) == 1.0) {
          const double c = std::cos(tau), sn = std::sin(tau);
          worst_endpoint = std::max(worst_endpoint, std::abs(gap + (h0 - h1) * (h0 - h1) * c * c * sn * sn));
        }
        // Boundary bands: the roots a_x = 0 and a_x = -2 a_z tan(tau), and
        // the times where the rotation leaves the gap identically zero.
        const double root = -2.0 * az * std::tan(tau);
        const bool in_band = std::abs(ax) < 1e-6 || std::abs(ax - root) < 1e-6 || std::abs(std::sin(2 * tau)) < 1e-6;
        if (in_band) continue;
        ++classified;
        const auto region = table1_region(ax, az, tau);
        const bool ok = (region == VarianceOrdering::MhBelowTpm && gap < 0.0) ||
                        (region == VarianceOrdering::MhAboveTpm && gap > 0.0);
        misclassified += ok ? 0 : 1;
      }
    }
  }
  return {worst_closed <= 1e-10 && worst_endpoint <= 1e-10 && misclassified == 0,
          "closed form max error " + fmt(worst_closed) + ", endpoint max error " + fmt(worst_endpoint) + ", " +
              std::to_string(misclassified) + " of " + std::to_string(classified) + " grid points misclassified"};
}

// Fluctuation theorems on random qudit processes.
Outcome ac5() {
  SampleStream s(derive_seed(kSeed, 5));
  double jarzynski = 0.0, xi_err = 0.0;
  long jensen_violations = 0, jensen_nonneg_violations = 0, nonneg_tables = 0, xi_nonpositive = 0;
  double worst_jensen = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const int d = 2 + i % 4;
    const auto h0 = spectral_decompose(s.gue(d));
    const auto ht = spectral_decompose(s.gue(d));
    const auto u = s.haar_unitary(d);
    const double beta = s.uniform(0.1, 2.0);
    const auto rho = s.density_matrix(d, 1 + i % d);
    const double df = free_energy_diff(h0, ht, beta);

    const auto gibbs = gibbs_state(h0, beta).state;
    jarzynski = std::max(
        jarzynski, std::abs(exponential_average(work_distribution(tpm_joint(gibbs, h0, ht, u)), beta, df) - 1.0));

    const auto r = entropy_report(rho, h0, ht, u, beta);
    xi_err = std::max(xi_err, std::abs(r.exp_avg_mh - r.xi));
    if (r.xi <= 0.0) {
      ++xi_nonpositive;
      continue;
    }
    const double excess = -std::log(r.xi) - 1e-9 - r.sigma_mh;
    const bool nonneg = r.mh_negativity >= 0.0;
    nonneg_tables += nonneg ? 1 : 0;
    if (excess > 0.0) {
      ++jensen_violations;
      jensen_nonneg_violations += nonneg ? 1 : 0;
      worst_jensen = std::max(worst_jensen, excess);
    }
  }
  const bool pass = jarzynski <= 1e-9 && xi_err <= 1e-9 && jensen_violations == 0;
  return {pass, "TPM Jarzynski max error " + fmt(jarzynski) + "; MH <exp> vs xi max error " + fmt(xi_err) +
                    "; Sigma_MH >= -ln xi violated in " + std::to_string(jensen_violations) + " of " +
                    std::to_string(n - xi_nonpositive) + " instances with xi > 0 (worst by " + fmt(worst_jensen) +
                    "); " + std::to_string(jensen_nonneg_violations) + " of them among the " +
                    std::to_string(nonneg_tables) + " instances whose MH weights are all nonnegative"};
}

struct CoherentQubit {
  HermitianObservable h0 = spectral_decompose(pauli_z());
  HermitianObservable ht = spectral_decompose(0.5 * pauli_z());
  UnitaryPropagator u = real_rotation(3 * kPi / 4);
};

// Negative entropy production on the coherent qubit family at beta = 0.2.
Outcome ac6() {
  const CoherentQubit f;
  const double beta = 0.2, k = 0.5, tau = 3 * kPi / 4;
  double worst = 0.0;
  for (double c : cli::linspace(0.0, 1.0, 101)) {
    worst = std::max(worst, std::abs(entropy_lr_qubit_closed_form(beta, k, tau, 0.0, c) - (-0.1 * c + 0.025)));
  }
  const double crossing = entropy_lr_qubit_zero_crossing(beta, k, tau, 0.0);
  double min_sigma = 1e300, at_omega = 0.0;
  for (double omega : cli::linspace(0.0, 1.0, 101)) {
    const double sigma = avg_entropy_production(thermal_coherent_qubit(beta, omega), f.h0, f.ht, f.u, beta, Scheme::MH);
    if (sigma < min_sigma) {
      min_sigma = sigma;
      at_omega = omega;
    }
  }
  return {worst <= 1e-12 && std::abs(crossing - 0.25) <= 1e-12 && min_sigma < 0.0,
          "closed form max error " + fmt(worst) + ", zero crossing off 0.25 by " + fmt(std::abs(crossing - 0.25)) +
              ", min exact Sigma_MH = " + fmt(min_sigma) + " at omega = " + fmt(at_omega)};
}

// Remainder of the linear-response formula scales faster than beta^2.5.
Outcome ac7() {
  const CoherentQubit f;
  const std::vector<double> betas = {0.025, 0.05, 0.1, 0.2};
  double min_slope = 1e300;
  std::string slopes;
  for (double omega : {0.25, 0.5, 0.75, 1.0}) {
    std::vector<double> errors;
    for (double beta : betas) {
      const auto rho = thermal_coherent_qubit(beta, omega);
      errors.push_back(avg_entropy_production(rho, f.h0, f.ht, f.u, beta, Scheme::MH) -
                       entropy_lr_mh(rho, f.h0, f.ht, f.u, beta));
    }
    const double slope = oracle::loglog_slope(betas, errors);
    min_slope = std::min(min_slope, slope);
    slopes += (slopes.empty() ? "" : ", ") + std::string("omega=") + fmt(omega) + ": " + fmt(slope);
  }
  return {min_slope >= 2.5, "fitted exponents " + slopes};
}

// Negative entropy production without negative quasiprobabilities.
Outcome ac8() {
  const CoherentQubit f;
  const double beta = 0.2;
  long found = 0;
  double first_omega = -1.0, sigma_there = 0.0, neg_there = 0.0;
  for (double omega : cli::linspace(0.0, 1.0, 101)) {
    const auto r = entropy_report(thermal_coherent_qubit(beta, omega), f.h0, f.ht, f.u, beta);
    if (r.sigma_mh < 0.0 && r.mh_negativity >= 0.0) {
      if (found++ == 0) {
        first_omega = omega;
        sigma_there = r.sigma_mh;
        neg_there = r.mh_negativity;
      }
    }
  }
  return {found > 0, std::to_string(found) + " of 101 omega points; first at omega = " + fmt(first_omega) +
                         " with Sigma_MH = " + fmt(sigma_there) + ", min MH weight = " + fmt(neg_there)};
}

// Sampled qutrit gaps grow with coherence and stay below the bound.
Outcome ac9() {
  Timer timer;
  const auto h = cli::scan_hamiltonian("auto", 3);
  const Eigenbasis basis = Eigenbasis::of(h);
  const auto grid = cli::linspace(0.0, 2.0, 20);
  std::vector<double> gaps, cs;
  long above = 0;
  double closest = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto r = max_gap_at_coherence(h, basis, grid[i], MomentOrder::First, 16,
                                        {.seed = derive_seed(kSeed, 900 + i), .dim = 3, .n_samples = 10000});
    gaps.push_back(r.best_gap);
    cs.push_back(grid[i]);
    if (grid[i] >= 0.2) {
      const double margin = theorem1_slope(h) * r.c_actual - r.best_gap;
      closest = std::min(closest, margin);
      above += margin > 0.0 ? 0 : 1;
    }
  }
  const double rho = oracle::spearman(cs, gaps);
  const double t = timer.seconds();
  return {rho > 0.95 && above == 0 && t < 120.0,
          "Spearman " + fmt(rho) + ", smallest bound margin for C >= 0.2: " + fmt(closest) + ", " + fmt(t) + " s"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Two runs of each CLI command with the same configuration give the same bytes.
Outcome ac10(const std::string& binary) {
  const std::vector<std::string> runs = {
      "bound-scan",
      "bound-scan --dim 4 --format json --samples 500",
      "variance-map",
      "variance-map --grid sphere --format json",
      "entropy-scan",
      "entropy-scan --mode beta --beta_points 20 --format json",
      "entropy-scan --mode time",
      "table1",
      "verify --samples 200",
  };
  long differing = 0;
  std::string failures;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const std::string path = "acceptance_ac10_" + std::to_string(i) + "_" + std::to_string(rep) + ".out";
      const std::string cmd = "\"" + binary + "\" " + runs[i] + " --out " + path;
      const int status = std::system(cmd.c_str());
      outputs[rep] = slurp(path);
      std::remove(path.c_str());
      if (status != 0) outputs[rep] = "exit status " + std::to_string(status);
    }
    if (outputs[0] != outputs[1] || outputs[0].empty() || outputs[0].rfind("exit status", 0) == 0) {
      ++differing;
      failures += " [" + runs[i] + "]";
    }
  }
  return {differing == 0, std::to_string(runs.size() - static_cast<std::size_t>(differing)) + " of " +
                              std::to_string(runs.size()) + " command lines reproduced byte for byte" + failures};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: qwork_acceptance <qwork binary> [--known-deviation ACn]...\n";
    return 2;
  }
  const std::string binary = argv[1];
  std::set<std::string> known;
  for (int i = 2; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) != "--known-deviation") {
      std::cerr << "unknown argument " << argv[i] << "\n";
      return 2;
    }
    known.insert(argv[i + 1]);
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", [&] { return ac10(binary); }},
  };
  int unexpected = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::string tag;
    if (!o.pass && known.count(name)) tag = " (known deviation)";
    if (!o.pass && !known.count(name)) ++unexpected;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << tag << ": " << o.detail << std::endl;
  }
  return unexpected == 0 ? 0 : 1;
}
