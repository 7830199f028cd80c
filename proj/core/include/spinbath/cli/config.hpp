#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "spinbath/errors.hpp"
#include "spinbath/half_integer.hpp"
#include "spinbath/hp_boson.hpp"
#include "spinbath/ising_mf.hpp"
#include "spinbath/xy_model.hpp"

namespace spinbath::cli {

enum class Command {
  Degeneracy,
  Distribution,
  XYEvolve,
  XYAsymptote,
  TauD,
  HPBoson,
  IsingMF,
  IsingExact,
  Compare,
  Sweep,
};

enum class OutputFormat { Csv, Json, Svg };

std::string command_name(Command c);
Command parse_command(const std::string& name);

/// Configuration problem (unknown key, type mismatch, violated precondition, bad grid).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct Grid {
  double t_min = 0.0;
  double t_max = 10.0;
  std::size_t points = 201;
};

/// Validated run description. `values` holds every key set on the command line or in the
/// config file (raw text); accessors fall back to defaults for keys not given.
struct RunConfig {
  Command command = Command::Degeneracy;
  std::map<std::string, std::string> values;

  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
  std::string plot_path;    // optional extra SVG

  Command sweep_command = Command::Degeneracy;
  std::string sweep_over;
  std::vector<std::string> sweep_values;

  bool given(const std::string& key) const { return values.count(key) != 0; }
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  HalfInteger spin() const;

  Grid grid() const;
  XYParams xy() const;
  IsingParams ising() const;
  BosonParams boson() const;
  QubitDensity qubit_state() const;

  /// Single-point configuration used for one sweep value.
  RunConfig sweep_point(const std::string& value) const;

  /// Parameter echo stored in result envelopes (explicit keys, resolved temperatures).
  std::map<std::string, std::string> echo() const;
};

/// Parses `subcommand --key value ...` (no program name). `--config FILE` reads flat
/// `key = value` lines first; command-line flags override them.
RunConfig parse_and_validate(const std::vector<std::string>& args);
RunConfig parse_and_validate(int argc, const char* const* argv);

/// Checks types, grids and module preconditions for the keys in `config`.
void validate(const RunConfig& config);

/// Keys accepted by a subcommand (besides output, format, plot and config).
const std::vector<std::string>& command_keys(Command c);

}  // namespace spinbath::cli
