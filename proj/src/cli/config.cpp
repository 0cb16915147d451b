#include "qwork/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qwork/cli/expr.hpp"
#include "qwork/errors.hpp"

namespace qwork::cli {

namespace {

std::vector<KeySpec> with_shared(std::vector<KeySpec> keys, const std::string& samples_default) {
  keys.insert(keys.begin(), {
                                {"seed", "20240601", "base seed; grid point i uses derive_seed(seed, i)"},
                                {"samples", samples_default, "random samples per grid point"},
                                {"out", "-", "output path, '-' for stdout"},
                                {"format", "csv", "csv or json"},
                                {"threads", "0", "worker threads, 0 for all cores"},
                            });
  return keys;
}

std::map<std::string, std::vector<KeySpec>> build_schema() {
  std::map<std::string, std::vector<KeySpec>> s;
  s["bound-scan"] = with_shared(
      {
          {"dim", "3", "Hilbert space dimension"},
          {"hamiltonian", "auto",
           "auto (sigma_z for d=2, Diag[1,1,-2]/sqrt3 for d=3, evenly spaced traceless otherwise) or a JSON "
           "matrix file"},
          {"order", "first", "first or second moment"},
          {"c_min", "0", "smallest coherence target"},
          {"c_max", "max", "largest coherence target, 'max' for d-1"},
          {"points", "20", "number of coherence targets"},
          {"states", "16", "random states per coherence target"},
      },
      "10000");
  s["variance-map"] = with_shared(
      {
          {"taus", "0.1,pi/5,pi/4,3pi/4", "rotation angles"},
          {"grid", "line", "line (pure real states) or sphere (whole Bloch ball surface)"},
          {"points", "201", "states on the line, or polar angles on the sphere"},
          {"azimuths", "24", "azimuthal angles on the sphere"},
          {"h_upper", "1", "upper energy h0"},
          {"h_lower", "-1", "lower energy h1"},
      },
      "1");
  s["entropy-scan"] = with_shared(
      {
          {"mode", "omega", "omega, time or beta"},
          {"beta", "0.2", "inverse temperature (omega and time modes)"},
          {"tau", "3pi/4", "rotation angle (omega and beta modes)"},
          {"omega", "1", "coherence scale (time and beta modes)"},
          {"k", "1/2", "H_tau = k sigma_z"},
          {"omega_points", "101", "omega grid over [0, 1] (omega mode)"},
          {"tau_min", "0", "time mode start"},
          {"tau_max", "pi", "time mode end"},
          {"tau_points", "101", "time mode grid size"},
          {"beta_min", "0.01", "beta mode start"},
          {"beta_max", "5", "beta mode end"},
          {"beta_points", "100", "beta mode grid size"},
          {"min_omega_points", "512", "omega grid for the minimum over omega (beta mode)"},
      },
      "1");
  s["table1"] = with_shared(
      {
          {"taus", "0.1,pi/5,pi/4,3pi/4", "rotation angles"},
          {"points", "200", "a_x grid over [-1, 1] per sign of a_z"},
          {"h_upper", "1", "upper energy h0"},
          {"h_lower", "-1", "lower energy h1"},
      },
      "1");
  s["verify"] = with_shared(
      {
          {"suite", "all", "comma-separated suite names or 'all'"},
          {"tolerance_scale", "1", "multiplier on every tolerance; negative values force failures"},
      },
      "2000");
  return s;
}

const std::map<std::string, std::vector<KeySpec>>& schema() {
  static const auto s = build_schema();
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<KeySpec>& command_keys(const std::string& command) {
  const auto it = schema().find(command);
  if (it == schema().end()) throw InvalidArgument("unknown command '" + command + "'");
  return it->second;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"bound-scan", "variance-map", "entropy-scan", "table1", "verify"};
  return names;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(line_no) + ": empty key");
    if (out.count(key)) throw InvalidArgument("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

ExperimentConfig ExperimentConfig::resolve(const std::string& command,
                                           const std::map<std::string, std::string>& file,
                                           const std::map<std::string, std::string>& flags) {
  const auto& keys = command_keys(command);
  ExperimentConfig cfg;
  cfg.command_ = command;
  for (const auto& k : keys) cfg.values_[k.name] = k.default_value;
  for (const auto* source : {&file, &flags}) {
    for (const auto& [key, value] : *source) {
      if (!cfg.values_.count(key)) throw InvalidArgument("unknown key '" + key + "' for command " + command);
      cfg.values_[key] = value;
    }
  }
  const std::string fmt = cfg.str("format");
  if (fmt != "csv" && fmt != "json") throw InvalidArgument("format: expected csv or json, got '" + fmt + "'");
  if (cfg.integer("samples") < 1) throw InvalidArgument("samples: must be >= 1");
  if (cfg.integer("threads") < 0) throw InvalidArgument("threads: must be >= 0");
  (void)cfg.seed();
  return cfg;
}

std::string ExperimentConfig::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvalidArgument("internal: key '" + key + "' not in schema of " + command_);
  return it->second;
}

double ExperimentConfig::real(const std::string& key) const {
  try {
    return eval_expression(str(key));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(key + ": " + e.what());
  }
}

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
  try {
    auto v = eval_list(str(key));
    if (v.empty()) throw InvalidArgument("empty list");
    return v;
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(key + ": " + e.what());
  }
}

long ExperimentConfig::integer(const std::string& key) const {
  const std::string s = str(key);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument(key + ": expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t ExperimentConfig::seed() const {
  const std::string s = str("seed");
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("seed: expected a non-negative 64-bit integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> linspace(double lo, double hi, long count) {
  if (count < 1) throw InvalidArgument("grid must have at least one point");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (long i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  out.back() = hi;
  return out;
}

}  // namespace qwork::cli
