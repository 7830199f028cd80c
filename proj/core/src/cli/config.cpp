#include "spinbath/cli/config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spinbath::cli {

namespace {

enum class KeyType { Int, Real, Spin, Flag, Text, List };

struct KeySpec {
  KeyType type;
  const char* fallback;
};

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = {
      {"N", {KeyType::Int, "100"}},          {"S", {KeyType::Spin, "1"}},
      {"J", {KeyType::Real, "1"}},           {"J0", {KeyType::Real, "1"}},
      {"w", {KeyType::Real, "0"}},           {"T", {KeyType::Real, "1"}},
      {"beta", {KeyType::Real, "1"}},        {"mu", {KeyType::Real, "0"}},
      {"alpha", {KeyType::Real, "1"}},       {"g", {KeyType::Real, "1"}},
      {"theta", {KeyType::Real, "0"}},       {"rho11", {KeyType::Real, "0.5"}},
      {"rho12-re", {KeyType::Real, "0.5"}},  {"rho12-im", {KeyType::Real, "0"}},
      {"t-min", {KeyType::Real, "0"}},       {"t-max", {KeyType::Real, "10"}},
      {"points", {KeyType::Int, "201"}},     {"n-max", {KeyType::Int, "0"}},
      {"kind", {KeyType::Text, "exact"}},    {"method", {KeyType::Text, "auto"}},
      {"J-equals-T", {KeyType::Flag, "false"}}, {"beta-from-T", {KeyType::Flag, "false"}},
      {"over", {KeyType::Text, ""}},         {"values", {KeyType::List, ""}},
      {"command", {KeyType::Text, ""}},
  };
  return table;
}

const std::vector<std::string> kOutputKeys = {"output", "format", "plot"};

const std::vector<std::pair<Command, const char*>> kCommandNames = {
    {Command::Degeneracy, "degeneracy"}, {Command::Distribution, "distribution"},
    {Command::XYEvolve, "xy-evolve"},    {Command::XYAsymptote, "xy-asymptote"},
    {Command::TauD, "tau-d"},            {Command::HPBoson, "hp-boson"},
    {Command::IsingMF, "ising-mf"},      {Command::IsingExact, "ising-exact"},
    {Command::Compare, "compare"},       {Command::Sweep, "sweep"},
};

bool uses_grid(Command c) {
  return c == Command::XYEvolve || c == Command::HPBoson || c == Command::IsingMF ||
         c == Command::IsingExact || c == Command::Compare;
}

const KeySpec& spec_of(const std::string& key) {
  const auto it = key_table().find(key);
  if (it == key_table().end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

std::string raw(const RunConfig& c, const std::string& key) {
  const auto it = c.values.find(key);
  return it != c.values.end() ? it->second : std::string(spec_of(key).fallback);
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': expected a real number, got '" + text + "'");
  }
  return v;
}

long parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
  }
  return v;
}

bool parse_flag(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text.empty()) return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + text + "'");
}

HalfInteger parse_spin(const std::string& text) {
  double value = 0.0;
  if (text.find('/') != std::string::npos) {
    try {
      value = HalfInteger::parse(text).value();
    } catch (const InvalidArgument&) {
      throw ConfigError("key 'S': expected a spin such as 1/2, 1 or 1.5, got '" + text + "'");
    }
  } else {
    value = parse_real("S", text);
  }
  const double twice = 2.0 * value;
  if (std::abs(twice - std::round(twice)) > 1e-9 || std::round(twice) < 1.0) {
    std::ostringstream got;
    got << twice;
    throw ConfigError("key 'S': 2S must be a positive integer (got 2S=" + got.str() + ")");
  }
  return HalfInteger::from_twice(static_cast<std::int64_t>(std::round(twice)));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void type_check(const std::string& key, const std::string& text) {
  switch (spec_of(key).type) {
    case KeyType::Int:
      parse_int(key, text);
      break;
    case KeyType::Real:
      parse_real(key, text);
      break;
    case KeyType::Spin:
      parse_spin(text);
      break;
    case KeyType::Flag:
      parse_flag(key, text);
      break;
    case KeyType::Text:
    case KeyType::List:
      break;
  }
}

// Turns a module precondition failure into a configuration diagnostic.
template <class F>
void precondition(F&& check) {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
}

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  const auto end = s.find_last_not_of(" \t\r");
  s.erase(end == std::string::npos ? 0 : end + 1);
  return s;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> keys_accepted(Command c) {
  std::vector<std::string> keys = command_keys(c);
  keys.insert(keys.end(), kOutputKeys.begin(), kOutputKeys.end());
  return keys;
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& [cmd, n] : kCommandNames) {
    if (name == n) return cmd;
  }
  throw ConfigError("unknown command '" + name + "'");
}

const std::vector<std::string>& command_keys(Command c) {
  static const std::vector<std::string> degeneracy = {"N", "S"};
  static const std::vector<std::string> distribution = {"N", "S", "kind", "points"};
  static const std::vector<std::string> xy_evolve = {
      "mu", "alpha", "g", "beta", "T", "beta-from-T", "N", "S", "theta",
      "rho11", "rho12-re", "rho12-im", "t-min", "t-max", "points"};
  static const std::vector<std::string> xy_asymptote = {
      "mu", "alpha", "g", "beta", "T", "beta-from-T", "N", "S", "theta", "rho11", "rho12-re",
      "rho12-im"};
  static const std::vector<std::string> tau_d = {"alpha", "g", "beta", "T", "beta-from-T", "S"};
  static const std::vector<std::string> hp_boson = {"S",     "g",     "alpha",  "mu",
                                                    "beta",  "T",     "beta-from-T", "n-max",
                                                    "t-min", "t-max", "points"};
  static const std::vector<std::string> ising_mf = {
      "N", "S", "J", "J0", "w", "T", "beta", "beta-from-T", "J-equals-T",
      "t-min", "t-max", "points", "method"};
  static const std::vector<std::string> ising_exact = {
      "N", "S", "J", "J0", "w", "T", "beta", "beta-from-T", "J-equals-T",
      "t-min", "t-max", "points"};
  static const std::vector<std::string> sweep = [] {
    std::vector<std::string> all;
    for (const auto& [k, _] : key_table()) all.push_back(k);
    return all;
  }();
  switch (c) {
    case Command::Degeneracy: return degeneracy;
    case Command::Distribution: return distribution;
    case Command::XYEvolve: return xy_evolve;
    case Command::XYAsymptote: return xy_asymptote;
    case Command::TauD: return tau_d;
    case Command::HPBoson: return hp_boson;
    case Command::IsingMF: return ising_mf;
    case Command::IsingExact:
    case Command::Compare: return ising_exact;
    case Command::Sweep: return sweep;
  }
  return degeneracy;
}

double RunConfig::real(const std::string& key) const { return parse_real(key, raw(*this, key)); }
long RunConfig::integer(const std::string& key) const { return parse_int(key, raw(*this, key)); }
bool RunConfig::flag(const std::string& key) const { return parse_flag(key, raw(*this, key)); }
std::string RunConfig::text(const std::string& key) const { return raw(*this, key); }
HalfInteger RunConfig::spin() const { return parse_spin(raw(*this, "S")); }

Grid RunConfig::grid() const {
  Grid g;
  g.t_min = real("t-min");
  g.t_max = real("t-max");
  const long points = integer("points");
  if (points < 2) throw ConfigError("grid error: points must be >= 2 (got " + std::to_string(points) + ")");
  if (!(g.t_max > g.t_min)) throw ConfigError("grid error: t-max must exceed t-min");
  g.points = static_cast<std::size_t>(points);
  return g;
}

namespace {

// Inverse temperature for models parameterised by beta.
double resolved_beta(const RunConfig& c) {
  if (c.given("T")) return 1.0 / c.real("T");
  return c.real("beta");
}

double resolved_temperature(const RunConfig& c) {
  if (c.given("beta") && !c.given("T")) return 1.0 / c.real("beta");
  return c.real("T");
}

int checked_n(const RunConfig& c) {
  const long n = c.integer("N");
  if (n < 1 || n > 100'000'000) throw ConfigError("key 'N': N must lie in [1, 1e8]");
  return static_cast<int>(n);
}

}  // namespace

XYParams RunConfig::xy() const {
  XYParams p;
  p.mu = real("mu");
  p.alpha = real("alpha");
  p.g = real("g");
  p.beta = resolved_beta(*this);
  p.n_spins = checked_n(*this);
  p.spin = spin();
  p.theta = real("theta");
  return p;
}

IsingParams RunConfig::ising() const {
  IsingParams p;
  p.n_spins = checked_n(*this);
  p.spin = spin();
  p.temperature = resolved_temperature(*this);
  p.coupling_j = flag("J-equals-T") ? p.temperature : real("J");
  p.coupling_j0 = real("J0");
  p.transverse_w = real("w");
  return p;
}

BosonParams RunConfig::boson() const {
  BosonParams p;
  p.spin = spin();
  p.g = real("g");
  p.alpha = real("alpha");
  p.mu = real("mu");
  p.beta = resolved_beta(*this);
  p.n_max = integer("n-max");
  return p;
}

QubitDensity RunConfig::qubit_state() const {
  return qubit_density(real("rho11"), {real("rho12-re"), real("rho12-im")});
}

RunConfig RunConfig::sweep_point(const std::string& value) const {
  RunConfig point = *this;
  point.command = sweep_command;
  point.values.erase("over");
  point.values.erase("values");
  point.values.erase("command");
  point.values[sweep_over] = value;
  point.sweep_over.clear();
  point.sweep_values.clear();
  return point;
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> out = values;
  out["command"] = command_name(command);
  if (command == Command::Sweep) out["sweep-command"] = command_name(sweep_command);
  return out;
}

void validate(const RunConfig& c) {
  const Command target = c.command == Command::Sweep ? c.sweep_command : c.command;
  const auto& allowed = command_keys(target);
  for (const auto& [key, text] : c.values) {
    const bool sweep_key = c.command == Command::Sweep && (key == "over" || key == "values" || key == "command");
    if (!sweep_key && std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' for command '" + command_name(target) + "'");
    }
    type_check(key, text);
  }
  if (c.given("T") && c.given("beta")) throw ConfigError("give either --T or --beta, not both");
  if (c.given("beta-from-T") && c.flag("beta-from-T") && c.given("beta")) {
    throw ConfigError("--beta-from-T derives beta from T; drop --beta");
  }
  if (c.given("J-equals-T") && c.flag("J-equals-T") && c.given("J")) {
    throw ConfigError("--J-equals-T sets J from T; drop --J");
  }

  if (c.command == Command::Sweep) {
    if (c.sweep_over.empty()) throw ConfigError("sweep needs --over KEY");
    if (c.sweep_command == Command::Sweep) throw ConfigError("sweep cannot nest another sweep");
    if (std::find(allowed.begin(), allowed.end(), c.sweep_over) == allowed.end()) {
      throw ConfigError("sweep key '" + c.sweep_over + "' is not a parameter of '" +
                        command_name(target) + "'");
    }
    if (spec_of(c.sweep_over).type == KeyType::Flag) throw ConfigError("cannot sweep over a flag");
    if (c.sweep_values.empty()) throw ConfigError("sweep needs --values v1,v2,...");
    for (const auto& v : c.sweep_values) validate(c.sweep_point(v));
    return;
  }

  if (uses_grid(c.command)) c.grid();
  precondition([&] {
    switch (c.command) {
      case Command::Degeneracy:
      case Command::Distribution: {
        checked_n(c);
        c.spin();
        if (c.command == Command::Distribution) {
          const auto kind = c.text("kind");
          if (kind != "exact" && kind != "gaussian") {
            throw ConfigError("key 'kind': expected exact or gaussian, got '" + kind + "'");
          }
          if (c.integer("points") < 2) throw ConfigError("grid error: points must be >= 2");
        }
        break;
      }
      case Command::XYEvolve:
      case Command::XYAsymptote:
        c.xy().validate();
        validate_qubit_density(c.qubit_state());
        break;
      case Command::TauD: {
        XYParams p = c.xy();
        p.validate();
        break;
      }
      case Command::HPBoson:
        c.boson().validate();
        thermal_truncation(c.boson());
        break;
      case Command::IsingMF: {
        c.ising().validate();
        const auto method = c.text("method");
        if (method != "auto" && method != "closed" && method != "oracle") {
          throw ConfigError("key 'method': expected auto, closed or oracle, got '" + method + "'");
        }
        if (method == "closed" && !has_meanfield_closed_form(c.spin())) {
          throw ConfigError("method 'closed' needs S in {1, 3/2, 2}");
        }
        if (method != "closed" && !has_meanfield_closed_form(c.spin()) && c.spin().twice() > 8) {
          throw ConfigError("mean-field g(t) needs 2S <= 8 outside S in {1, 3/2, 2}");
        }
        break;
      }
      case Command::IsingExact:
      case Command::Compare: {
        const IsingParams p = c.ising();
        p.validate();
        if (p.transverse_w != 0.0) throw ConfigError("exact Ising solution requires w = 0");
        if (c.command == Command::Compare && p.spin.twice() != 2) {
          throw ConfigError("compare is defined for S = 1");
        }
        break;
      }
      case Command::Sweep:
        break;
    }
  });
}

RunConfig parse_and_validate(const std::vector<std::string>& args) {
  CLI::App app{"spinbath: central-spin decoherence in spin baths"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::map<Command, std::map<std::string, std::string>> text;
  std::map<Command, std::map<std::string, bool>> flags;
  std::map<Command, CLI::App*> subs;
  for (const auto& [cmd, name] : kCommandNames) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value file; flags override it");
    for (const auto& key : keys_accepted(cmd)) {
      const bool is_flag = key_table().count(key) && key_table().at(key).type == KeyType::Flag;
      if (is_flag) {
        sub->add_flag("--" + key, flags[cmd][key]);
      } else {
        sub->add_option("--" + key, text[cmd][key]);
      }
    }
    subs[cmd] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw ConfigError(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig config;
  for (const auto& [cmd, sub] : subs) {
    if (!sub->parsed()) continue;
    config.command = cmd;
    for (const auto& key : keys_accepted(cmd)) {
      const CLI::Option* opt = sub->get_option("--" + key);
      if (opt->count() == 0) continue;
      config.values[key] = flags[cmd].count(key) ? std::string(flags[cmd][key] ? "true" : "false")
                                                 : text[cmd][key];
    }
  }

  if (!config_path.empty()) {
    const auto accepted = keys_accepted(config.command);
    for (const auto& [key, value] : read_config_file(config_path)) {
      if (std::find(accepted.begin(), accepted.end(), key) == accepted.end()) {
        throw ConfigError(config_path + ": unknown key '" + key + "' for command '" +
                          command_name(config.command) + "'");
      }
      config.values.emplace(key, value);  // command line wins
    }
  }

  for (const auto& key : kOutputKeys) {
    const auto it = config.values.find(key);
    if (it == config.values.end()) continue;
    if (key == "output") config.output_path = it->second;
    if (key == "plot") config.plot_path = it->second;
    if (key == "format") {
      if (it->second == "csv") config.format = OutputFormat::Csv;
      else if (it->second == "json") config.format = OutputFormat::Json;
      else if (it->second == "svg") config.format = OutputFormat::Svg;
      else throw ConfigError("key 'format': expected csv, json or svg, got '" + it->second + "'");
    }
    config.values.erase(it);
  }

  if (config.command == Command::Sweep) {
    config.sweep_over = config.text("over");
    config.sweep_values = split_list(config.text("values"));
    if (!config.given("command")) throw ConfigError("sweep needs --command NAME");
    config.sweep_command = parse_command(config.text("command"));
  }
  validate(config);
  return config;
}

RunConfig parse_and_validate(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_and_validate(args);
}

}  // namespace spinbath::cli
