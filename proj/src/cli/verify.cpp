#include "qwork/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "qwork/bounds.hpp"
#include "qwork/cli/commands.hpp"
#include "qwork/cli/output.hpp"
#include "qwork/coherence.hpp"
#include "qwork/entropy.hpp"
#include "qwork/errors.hpp"
#include "qwork/sampling.hpp"
#include "qwork/workstats.hpp"

namespace qwork::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Records checks of one suite and keeps the first counterexample.
class Checker {
 public:
  Checker(std::string name, double scale) : scale_(scale) { result_.name = std::move(name); }

  // Passes when value <= tol (tolerance scaled).
  void at_most(double value, double tol, const std::string& what, const std::function<Json()>& context) {
    record(value <= tol * scale_, what, value, tol * scale_, context);
  }
  // Passes when |value| <= tol (tolerance scaled).
  void near_zero(double value, double tol, const std::string& what, const std::function<Json()>& context) {
    record(std::abs(value) <= tol * scale_, what, value, tol * scale_, context);
  }
  void holds(bool ok, const std::string& what, const std::function<Json()>& context) {
    record(ok, what, ok ? 1.0 : 0.0, 1.0, context);
  }

  SuiteResult finish() { return std::move(result_); }

 private:
  double scale_;
  SuiteResult result_;

  void record(bool ok, const std::string& what, double value, double tol, const std::function<Json()>& context) {
    ++result_.checks;
    // A negative scale is the checker's self-test: every check must fail.
    if (ok && scale_ >= 0.0) return;
    if (result_.failures++ == 0) {
      Json j = Json::object();
      j["check"] = what;
      j["value"] = std::isfinite(value) ? Json(value) : Json(nullptr);
      j["tolerance"] = tol;
      j["inputs"] = context();
      result_.first_counterexample = std::move(j);
    }
  }
};

struct Instance {
  int dim = 2;
  HermitianObservable h0 = spectral_decompose(pauli_z());
  HermitianObservable h_tau = spectral_decompose(pauli_z());
  UnitaryPropagator u = UnitaryPropagator::identity(2);
  DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  double beta = 1.0;

  Json json() const {
    Json j = Json::object();
    j["dim"] = dim;
    j["H0"] = to_json(h0.matrix());
    j["H_tau"] = to_json(h_tau.matrix());
    j["U"] = to_json(u.matrix());
    j["rho0"] = to_json(rho.matrix());
    j["beta"] = beta;
    return j;
  }
};

// Random instance: GUE Hamiltonians (a degenerate diagonal one every fifth
// draw), Haar unitary, random-rank state.
Instance draw(SampleStream& s, int i, bool cyclic) {
  Instance x;
  x.dim = 2 + i % 4;
  auto hamiltonian = [&]() {
    if (i % 5 == 4 && x.dim >= 3) {
      std::vector<double> e(static_cast<std::size_t>(x.dim), 1.0);
      e.back() = -2.0;
      return HermitianObservable::diagonal(e);
    }
    return spectral_decompose(s.gue(x.dim));
  };
  x.h0 = hamiltonian();
  x.h_tau = cyclic ? x.h0 : spectral_decompose(s.gue(x.dim));
  x.u = s.haar_unitary(x.dim);
  x.rho = s.density_matrix(x.dim, 1 + i % x.dim);
  x.beta = s.uniform(0.1, 2.0);
  return x;
}

std::uint64_t name_hash(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
  return h;
}

struct SuiteContext {
  long samples;
  std::uint64_t seed;
  double scale;
};

using SuiteFn = std::function<SuiteResult(const SuiteContext&)>;

SuiteResult suite_spectral(const SuiteContext& c) {
  Checker ck("spectral", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    const auto x = draw(s, static_cast<int>(i), false);
    const auto& h = x.h0;
    const int d = h.dim();
    auto ctx = [&] { return x.json(); };
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    double orth = 0.0;
    for (std::size_t k = 0; k < h.levels().size(); ++k) {
      sum += h.levels()[k].projector;
      for (std::size_t l = 0; l < h.levels().size(); ++l) {
        const ComplexMatrix expected = k == l ? h.levels()[k].projector : ComplexMatrix::Zero(d, d);
        orth = std::max(orth, max_abs(h.levels()[k].projector * h.levels()[l].projector - expected));
      }
      if (k > 0) ck.holds(h.levels()[k - 1].energy > h.levels()[k].energy, "levels sorted descending", ctx);
    }
    ck.near_zero(max_abs(sum - ComplexMatrix::Identity(d, d)), 1e-12, "projectors sum to identity", ctx);
    ck.near_zero(orth, 1e-12, "projectors orthogonal and idempotent", ctx);
    ck.at_most(max_abs(h.reconstruct() - h.matrix()), 10 * h.grouping_tol(), "reconstruction", ctx);

    const auto g = gibbs_state(h, x.beta).state.matrix();
    ck.near_zero(max_abs(g * h.matrix() - h.matrix() * g), 1e-10, "Gibbs state commutes with H", ctx);
    ck.near_zero(g.trace().real() - 1.0, 1e-12, "Gibbs trace", ctx);

    const auto q = qubit_unitary(s.uniform(-7, 7), s.uniform(-7, 7), s.uniform(-7, 7), s.uniform(-7, 7));
    ck.at_most(q.unitarity_defect(), 1e-12, "qubit_unitary unitary", [&] { return to_json(q.matrix()); });
  }
  return ck.finish();
}

SuiteResult suite_coherence(const SuiteContext& c) {
  Checker ck("coherence", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    const auto x = draw(s, static_cast<int>(i), false);
    auto ctx = [&] { return x.json(); };
    const auto once = dephase(x.rho, x.h0);
    ck.near_zero(max_abs(dephase(once, x.h0).matrix() - once.matrix()), 1e-12, "dephase idempotent", ctx);
    const Eigenbasis basis = Eigenbasis::of(x.h0);
    if (!x.h0.degenerate()) ck.near_zero(l1_coherence(once, basis), 1e-12, "dephased state incoherent", ctx);
    ComplexMatrix phases = ComplexMatrix::Zero(x.dim, x.dim);
    for (int k = 0; k < x.dim; ++k) phases(k, k) = std::exp(Complex(0.0, s.uniform(0.0, 2 * kPi)));
    const ComplexMatrix dmat = basis.vectors() * phases * basis.vectors().adjoint();
    const DensityMatrix rotated(dmat * x.rho.matrix() * dmat.adjoint());
    ck.near_zero(l1_coherence(rotated, basis) - l1_coherence(x.rho, basis), 1e-10,
                 "l1 invariant under diagonal unitaries", ctx);
    if (x.dim == 2) {
      const auto b = bloch(x.rho, basis);
      ck.near_zero(b.coherence - std::hypot(b.a_x, b.a_y), 1e-10, "qubit l1 = |a_perp|", ctx);
      ck.at_most(b.a_x * b.a_x + b.a_y * b.a_y + b.a_z * b.a_z - 1.0, 1e-10, "Bloch vector length", ctx);
    }
  }
  return ck.finish();
}

SuiteResult suite_workstats(const SuiteContext& c) {
  Checker ck("workstats", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    const auto x = draw(s, static_cast<int>(i), false);
    auto ctx = [&] { return x.json(); };
    for (Scheme scheme : {Scheme::TPM, Scheme::MH}) {
      const auto t = joint_table(scheme, x.rho, x.h0, x.h_tau, x.u);
      ck.near_zero(t.total() - 1.0, 1e-10, "table normalised", ctx);
      const RealVector marg = t.initial_marginal();
      for (int n = 0; n < x.h0.num_levels(); ++n) {
        const double pop = (x.h0.levels()[n].projector * x.rho.matrix()).trace().real();
        ck.near_zero(marg(n) - pop, 1e-10, "initial marginal", ctx);
      }
      if (scheme == Scheme::TPM) ck.at_most(-t.min_entry(), 1e-12, "TPM nonnegative", ctx);
      const auto dist = work_distribution(t);
      ck.near_zero(dist.total() - 1.0, 1e-10, "distribution normalised", ctx);
      const auto ms = moments_from_distribution(dist, 4);
      ck.near_zero(ms.cumulant(2) - ms.variance(), 1e-12, "kappa2 = variance", ctx);
      for (int m = 1; m <= 4; ++m) {
        const double scale = std::max(1.0, std::abs(ms.moment(m)));
        ck.near_zero((analytic_moment(scheme, x.rho, x.h0, x.h_tau, x.u, m) - ms.moment(m)) / scale, 1e-9,
                     "analytic moment " + std::to_string(m) + " (" + std::string(to_string(scheme)) + ")", ctx);
      }
      const double h = 1e-5;
      const Complex d1 = (characteristic_function(dist, h) - characteristic_function(dist, -h)) / (2 * h);
      ck.near_zero((d1.imag() - ms.mean()) / std::max(1.0, std::abs(ms.mean())), 1e-5, "G'(0) = i<w>", ctx);
      const double h2 = 1e-3;
      const Complex d2 = (characteristic_function(dist, h2) - 2.0 * characteristic_function(dist, 0.0) +
                          characteristic_function(dist, -h2)) /
                         (h2 * h2);
      ck.near_zero((-d2.real() - ms.second()) / std::max(1.0, ms.second()), 1e-5, "G''(0) = -<w^2>", ctx);
    }
    const auto incoherent = dephase(x.rho, x.h0);
    ck.near_zero(max_abs(mh_joint(incoherent, x.h0, x.h_tau, x.u).P - tpm_joint(incoherent, x.h0, x.h_tau, x.u).P),
                 1e-12, "scheme equivalence for incoherent states", ctx);
  }
  return ck.finish();
}

SuiteResult suite_mh_range(const SuiteContext& c) {
  Checker ck("mh-range", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    const auto x = draw(s, static_cast<int>(i), false);
    const auto t = mh_joint(x.rho, x.h0, x.h_tau, x.u);
    auto ctx = [&] { return x.json(); };
    ck.at_most(-0.125 - t.min_entry(), 1e-10, "MH entries >= -1/8", ctx);
    ck.at_most(t.P.maxCoeff() - 1.0, 1e-10, "MH entries <= 1", ctx);
  }
  return ck.finish();
}

SuiteResult suite_bounds(const SuiteContext& c) {
  Checker ck("bounds", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    const auto x = draw(s, static_cast<int>(i), true);
    auto ctx = [&] { return x.json(); };
    const auto r = gap_report(x.rho, x.h0, x.u, Eigenbasis::of(x.h0));
    ck.at_most(std::abs(r.gap_first) - r.bound_first, 1e-9, "first-moment bound", ctx);
    ck.at_most(std::abs(r.gap_second) - r.bound_second, 1e-9, "second-moment bound", ctx);
    if (x.dim == 2) ck.near_zero(r.gap_second, 1e-10, "qubit second moments agree", ctx);
  }
  return ck.finish();
}

SuiteResult suite_qubit(const SuiteContext& c) {
  Checker ck("qubit", c.scale);
  SampleStream s(c.seed);
  const auto z = spectral_decompose(pauli_z());
  for (long i = 0; i < c.samples; ++i) {
    const double hi = s.uniform(0.1, 2.0);
    const auto h = HermitianObservable::diagonal({hi, hi - s.uniform(0.1, 3.0)});
    const auto rho = s.density_matrix(2, 1 + static_cast<int>(i % 2));
    const double tau = s.uniform(-kPi, kPi);
    const auto u = real_rotation(tau);
    auto ctx = [&] {
      Json j = Json::object();
      j["H"] = to_json(h.matrix());
      j["rho0"] = to_json(rho.matrix());
      j["tau"] = tau;
      return j;
    };
    const auto mh = moments_from_distribution(work_distribution(mh_joint(rho, h, h, u)), 2);
    const auto tpm = moments_from_distribution(work_distribution(tpm_joint(rho, h, h, u)), 2);
    ck.near_zero(corollary1_variance_gap(rho, h, tau) - (mh.variance() - tpm.variance()), 1e-10,
                 "variance gap closed form", ctx);
    ck.near_zero(qubit_first_moment_gap(rho, h, u) - (mh.mean() - tpm.mean()), 1e-10, "first-moment closed form",
                 ctx);

    const auto best = max_gap_over_unitaries(rho, z, MomentOrder::First, {.seed = s.engine()(), .dim = 2, .n_samples = 1});
    ck.near_zero(best.best_gap - theorem1_bound(z, rho), 1e-8, "qubit bound saturated", ctx);
  }
  // Sign regions on a fixed grid, away from the roots.
  for (int i = 0; i < 200; ++i) {
    const double ax = -1.0 + 2.0 * (i + 0.5) / 200.0;
    for (int j = 0; j < 50; ++j) {
      const double tau = -kPi / 2 + kPi * (j + 0.5) / 50.0;
      for (double sign : {1.0, -1.0}) {
        const double az = sign * std::sqrt(1.0 - ax * ax);
        const double root = -2.0 * az * std::tan(tau);
        if (std::abs(ax) < 1e-6 || std::abs(ax - root) < 1e-6 || std::abs(std::sin(2 * tau)) < 1e-6) continue;
        const double gap = corollary1_variance_gap(qubit_state(ax, 0.0, az), z, tau);
        const auto region = table1_region(ax, az, tau);
        const auto expected = gap < 0 ? VarianceOrdering::MhBelowTpm : VarianceOrdering::MhAboveTpm;
        ck.holds(region == expected, "sign region", [&] {
          Json j = Json::object();
          j["a_x"] = ax;
          j["a_z"] = az;
          j["tau"] = tau;
          j["gap"] = gap;
          return j;
        });
      }
    }
  }
  return ck.finish();
}

SuiteResult suite_jarzynski(const SuiteContext& c) {
  Checker ck("jarzynski", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    const auto x = draw(s, static_cast<int>(i), false);
    auto ctx = [&] { return x.json(); };
    const double df = free_energy_diff(x.h0, x.h_tau, x.beta);
    const auto gibbs = gibbs_state(x.h0, x.beta).state;
    const auto tpm = work_distribution(tpm_joint(gibbs, x.h0, x.h_tau, x.u));
    ck.near_zero(exponential_average(tpm, x.beta, df) - 1.0, 1e-9, "TPM Jarzynski equality", ctx);
    const auto mh = work_distribution(mh_joint(x.rho, x.h0, x.h_tau, x.u));
    const double xi = xi_factor(x.rho, x.h0, x.h_tau, x.u, x.beta);
    ck.near_zero(exponential_average(mh, x.beta, df) - xi, 1e-9, "MH exponential average = xi", ctx);
    ck.near_zero(xi_factor(gibbs, x.h0, x.h_tau, x.u, x.beta) - 1.0, 1e-9, "xi = 1 at equilibrium", ctx);
  }
  return ck.finish();
}

SuiteResult suite_second_law(const SuiteContext& c) {
  Checker ck("second-law", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    auto x = draw(s, static_cast<int>(i), false);
    // Gibbs populations with the coherences of the drawn state.
    const auto g = gibbs_state(x.h0, x.beta).state.matrix();
    const ComplexMatrix coherent = x.rho.matrix() - dephase(x.rho, x.h0).matrix();
    double t = 1.0;
    for (;;) {
      const ComplexMatrix m = g + t * coherent;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
      if (es.eigenvalues().minCoeff() >= 0.0 || t < 1e-6) break;
      t *= 0.5;
    }
    x.rho = DensityMatrix(g + t * coherent);
    auto ctx = [&] { return x.json(); };
    const auto r = entropy_report(x.rho, x.h0, x.h_tau, x.u, x.beta);
    ck.at_most(-r.sigma_tpm, 1e-9, "TPM entropy production >= 0", ctx);
    // Jensen's inequality needs nonnegative weights.
    if (r.xi > 0.0 && r.mh_negativity >= 0.0) {
      ck.at_most(-std::log(r.xi) - r.sigma_mh, 1e-9, "MH entropy production >= -ln xi", ctx);
    }
  }
  return ck.finish();
}

SuiteResult suite_response(const SuiteContext& c) {
  Checker ck("response", c.scale);
  const auto h0 = spectral_decompose(pauli_z());
  const auto half = spectral_decompose(0.5 * pauli_z());
  const auto u = real_rotation(3 * kPi / 4);
  std::vector<double> lx, ly;
  for (double beta : {0.025, 0.05, 0.1, 0.2}) {
    const auto rho = thermal_coherent_qubit(beta, 1.0);
    const double diff =
        avg_entropy_production(rho, h0, half, u, beta, Scheme::MH) - entropy_lr_mh(rho, h0, half, u, beta);
    lx.push_back(std::log(beta));
    ly.push_back(std::log(std::abs(diff)));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  ck.at_most(2.0 - slope, 0.0 + 1e-12, "linear-response remainder at least quadratic in beta", [&] {
    Json j = Json::object();
    j["fitted_order"] = slope;
    return j;
  });
  double previous = 1e300;
  for (double beta : {2.0, 4.0, 8.0, 16.0}) {
    const auto rho = thermal_coherent_qubit(beta, 1.0);
    const double gap = std::abs(avg_entropy_production(rho, h0, half, u, beta, Scheme::MH) -
                                avg_entropy_production(rho, h0, half, u, beta, Scheme::TPM));
    ck.holds(gap < previous, "schemes converge as beta grows", [&] {
      Json j = Json::object();
      j["beta"] = beta;
      j["gap"] = gap;
      return j;
    });
    previous = gap;
  }
  ck.at_most(previous, 1e-2, "schemes agree at large beta", [] { return Json::object(); });
  return ck.finish();
}

SuiteResult suite_sampling(const SuiteContext& c) {
  Checker ck("sampling", c.scale);
  SampleStream s(c.seed);
  for (long i = 0; i < c.samples; ++i) {
    const int d = 2 + static_cast<int>(i % 4);
    const RandomSpec spec{.seed = derive_seed(c.seed, static_cast<std::uint64_t>(i)), .dim = d};
    const auto a = haar_unitary(spec);
    const auto b = haar_unitary(spec);
    auto ctx = [&] {
      Json j = Json::object();
      j["seed"] = std::to_string(spec.seed);
      j["dim"] = d;
      return j;
    };
    ck.holds((a.matrix().array() == b.matrix().array()).all(), "seeded unitaries bit-identical", ctx);
    ck.at_most(a.unitarity_defect(), 1e-12, "Haar unitary", ctx);
    const double target = s.uniform(0.0, d - 1.0);
    const Eigenbasis basis(s.haar_unitary(d).matrix());
    const auto rho = random_state_with_coherence(d, target, basis, spec);
    ck.near_zero(l1_coherence(rho, basis) - target, 1e-6, "coherence target met", ctx);
    ck.at_most(-rho.min_eigenvalue(), 1e-10, "sampled state positive", ctx);
  }
  return ck.finish();
}

// Runs small instances of the scan commands twice, compares the output bytes
// and recomputes every hundredth row from its input columns.
SuiteResult suite_cli(const SuiteContext& c) {
  Checker ck("cli", c.scale);
  auto config = [&](const std::string& cmd, std::map<std::string, std::string> flags) {
    flags["seed"] = std::to_string(c.seed);
    return ExperimentConfig::resolve(cmd, {}, flags);
  };
  const std::vector<std::pair<std::string, ExperimentConfig>> runs = {
      {"bound-scan", config("bound-scan", {{"points", "5"}, {"states", "2"}, {"samples", "200"}})},
      {"variance-map", config("variance-map", {{"points", "51"}})},
      {"entropy-scan", config("entropy-scan", {{"omega_points", "51"}})},
      {"table1", config("table1", {{"points", "50"}})},
  };
  const auto z = spectral_decompose(pauli_z());
  for (const auto& [name, cfg] : runs) {
    ResultTable first;
    std::string a, b;
    if (name == "bound-scan") {
      first = bound_scan(cfg);
      b = render(bound_scan(cfg), "csv");
    } else if (name == "variance-map") {
      first = variance_map(cfg);
      b = render(variance_map(cfg), "csv");
    } else if (name == "entropy-scan") {
      first = entropy_scan(cfg);
      b = render(entropy_scan(cfg), "csv");
    } else {
      first = table1_scan(cfg);
      b = render(table1_scan(cfg), "csv");
    }
    a = render(first, "csv");
    ck.holds(a == b, name + " output reproducible", [&] { return Json(name); });

    for (std::size_t r = 0; r < first.rows.size(); r += 100) {
      auto ctx = [&] {
        Json j = Json::object();
        j["command"] = name;
        j["row"] = r;
        return j;
      };
      if (name == "variance-map") {
        const auto rho = qubit_state(first.number(r, "a_x"), first.number(r, "a_y"), first.number(r, "a_z"));
        ck.near_zero(corollary1_variance_gap(rho, z, first.number(r, "tau")) - first.number(r, "gap_variance"),
                     1e-10, "variance-map row", ctx);
      } else if (name == "entropy-scan") {
        const double beta = first.number(r, "beta");
        const auto rho = thermal_coherent_qubit(beta, first.number(r, "omega"));
        const double sigma = avg_entropy_production(rho, z, spectral_decompose(0.5 * pauli_z()),
                                                    real_rotation(first.number(r, "tau")), beta, Scheme::MH);
        ck.near_zero(sigma - first.number(r, "sigma_mh"), 1e-12, "entropy-scan row", ctx);
      } else if (name == "table1") {
        ck.holds(first.number(r, "consistent") == 1.0, "table1 row", ctx);
      } else {
        ck.at_most(first.number(r, "max_gap") - first.number(r, "bound"), 1e-9, "bound-scan row", ctx);
      }
    }
  }
  return ck.finish();
}

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> list = {
      {"spectral", suite_spectral},   {"coherence", suite_coherence}, {"workstats", suite_workstats},
      {"mh-range", suite_mh_range},   {"bounds", suite_bounds},       {"qubit", suite_qubit},
      {"jarzynski", suite_jarzynski}, {"second-law", suite_second_law}, {"response", suite_response},
      {"sampling", suite_sampling},   {"cli", suite_cli},
  };
  return list;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    return n;
  }();
  return names;
}

VerifySummary run_verify(const ExperimentConfig& cfg) {
  std::vector<std::string> selected;
  const std::string spec = cfg.str("suite");
  if (spec == "all") {
    selected = suite_names();
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (std::find(suite_names().begin(), suite_names().end(), item) == suite_names().end()) {
        std::string known;
        for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
        throw InvalidArgument("suite: unknown suite '" + item + "' (known: " + known + ")");
      }
      selected.push_back(item);
    }
  }
  const SuiteContext base{cfg.integer("samples"), cfg.seed(), cfg.real("tolerance_scale")};

  VerifySummary summary;
  for (const auto& [name, fn] : suites()) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    SuiteContext ctx = base;
    ctx.seed = derive_seed(base.seed, name_hash(name));
    SuiteResult r = fn(ctx);
    if (r.failures > 0 && summary.passed) {
      summary.passed = false;
      summary.first_failure = name + ": " + r.first_counterexample.value("check", std::string("?"));
    }
    summary.suites.push_back(std::move(r));
  }
  return summary;
}

Json summary_json(const VerifySummary& s) {
  Json j = Json::object();
  j["passed"] = s.passed;
  j["first_failure"] = s.first_failure;
  Json suites = Json::array();
  for (const auto& r : s.suites) {
    Json o = Json::object();
    o["name"] = r.name;
    o["checks"] = r.checks;
    o["failures"] = r.failures;
    o["passed"] = r.failures == 0;
    o["first_counterexample"] = r.first_counterexample;
    suites.push_back(std::move(o));
  }
  j["suites"] = std::move(suites);
  return j;
}

void emit_verify(const VerifySummary& s, const ExperimentConfig& cfg) {
  if (cfg.str("format") == "json") {
    const std::string text = summary_json(s).dump(2) + "\n";
    if (cfg.str("out") == "-") {
      std::cout << text;
    } else {
      std::ofstream out(cfg.str("out"), std::ios::binary);
      if (!out) throw InvalidArgument("out: cannot write '" + cfg.str("out") + "'");
      out << text;
    }
    return;
  }
  ResultTable t;
  t.columns = {"suite", "checks", "failures", "passed", "first_counterexample"};
  for (const auto& r : s.suites) {
    t.add_row({r.name, r.checks, r.failures, static_cast<long>(r.failures == 0),
               r.first_counterexample.is_null() ? std::string() : r.first_counterexample.dump()});
  }
  emit(t, "csv", cfg.str("out"));
}

}  // namespace qwork::cli
