#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "qwork/cli/commands.hpp"
#include "qwork/cli/config.hpp"
#include "qwork/errors.hpp"

namespace {

struct CommandFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool corrupt_tolerance = false;
};

const std::map<std::string, std::string> kDescriptions = {
    {"bound-scan", "largest moment gap over random unitaries versus coherence, with the analytic bound"},
    {"variance-map", "qubit variance gap MH minus TPM over Bloch states for a list of times"},
    {"entropy-scan", "entropy production under both schemes, scanned over coherence, time or temperature"},
    {"table1", "sign regions of the qubit variance gap, checked against direct evaluation"},
    {"verify", "randomised self-check of the library identities; exit 1 on any failure"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work statistics of coherent quantum processes: TPM versus Margenau-Hill."};
  app.require_subcommand(1);

  std::map<std::string, std::unique_ptr<CommandFlags>> flags;
  for (const auto& name : qwork::cli::command_names()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    auto& f = *flags.emplace(name, std::make_unique<CommandFlags>()).first->second;
    sub->add_option("--config", f.config_path, "flat key=value file; flags override it");
    for (const auto& key : qwork::cli::command_keys(name)) {
      const std::string help = key.help + " (default: " + key.default_value + ")";
      sub->add_option_function<std::string>(
          "--" + key.name, [&f, k = key.name](const std::string& v) { f.values[k] = v; }, help);
    }
    if (name == "verify") {
      sub->add_flag("--corrupt-tolerance", f.corrupt_tolerance,
                    "force every check to fail, as a self-test of the checker");
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto* sub : app.get_subcommands()) {
      auto& f = *flags.at(sub->get_name());
      if (f.corrupt_tolerance) f.values["tolerance_scale"] = "-1";
      const auto file = f.config_path.empty() ? std::map<std::string, std::string>{}
                                              : qwork::cli::read_config_file(f.config_path);
      const auto cfg = qwork::cli::ExperimentConfig::resolve(sub->get_name(), file, f.values);
      return qwork::cli::run_command(cfg, std::cerr);
    }
  } catch (const qwork::Error& e) {
    std::cerr << "qwork: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
