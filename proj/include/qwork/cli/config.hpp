#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qwork::cli {

struct KeySpec {
  std::string name;
  std::string default_value;
  std::string help;
};

// Keys accepted by a command, shared ones (seed, samples, out, format,
// threads) included. Throws InvalidArgument for an unknown command.
const std::vector<KeySpec>& command_keys(const std::string& command);
const std::vector<std::string>& command_names();

// Parses flat "key = value" text. Blank lines and lines starting with '#'
// are skipped. Throws InvalidArgument naming the line on malformed input.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Resolved parameters of one command. Values are kept as text and converted
/// on access, so a bad value is reported together with its key.
class ExperimentConfig {
 public:
  // Precedence: flags > file > defaults. Unknown keys in either source are
  // rejected.
  static ExperimentConfig resolve(const std::string& command, const std::map<std::string, std::string>& file,
                                  const std::map<std::string, std::string>& flags);

  const std::string& command() const { return command_; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string str(const std::string& key) const;
  double real(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  long integer(const std::string& key) const;
  std::uint64_t seed() const;

 private:
  std::string command_;
  std::map<std::string, std::string> values_;
};

// Evenly spaced points from lo to hi inclusive; count >= 1 (count = 1 gives lo).
std::vector<double> linspace(double lo, double hi, long count);

}  // namespace qwork::cli
