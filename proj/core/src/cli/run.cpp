#include "spinbath/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "spinbath/cli/plot.hpp"
#include "spinbath/degeneracy.hpp"
#include "spinbath/distribution.hpp"
#include "spinbath/hp_boson.hpp"
#include "spinbath/ising_exact.hpp"
#include "spinbath/ising_mf.hpp"
#include "spinbath/xy_model.hpp"

namespace spinbath::cli {

namespace {

const char* kOne = "1";

std::string key_unit(const std::string& key) {
  if (key == "T" || key == "J" || key == "J0" || key == "w" || key == "mu" || key == "alpha" ||
      key == "g") {
    return "energy";
  }
  if (key == "beta") return "1/energy";
  return kOne;
}

Cell flag_cell(bool b) { return std::string(b ? "true" : "false"); }

ResultEnvelope make_envelope(const RunConfig& c) {
  ResultEnvelope env;
  env.command = command_name(c.command);
  env.config = c.echo();
  env.version = version();
  return env;
}

DegeneracyTable table_for(int n, HalfInteger s) {
  const auto dir = cache_dir_from_environment();
  return dir ? cached_degeneracy_table(n, s, *dir) : degeneracy_table(n, s);
}

std::vector<double> time_grid(const RunConfig& c) {
  const Grid g = c.grid();
  return linear_grid(g.t_min, g.t_max, g.points);
}

void series_rows(ResultEnvelope& env, const CoherenceSeries& s, const std::string& time_unit,
                 const std::string& stem, bool with_pop) {
  env.columns = {{"t", time_unit}, {"re_" + stem, kOne}, {"im_" + stem, kOne}, {"abs_" + stem, kOne}};
  if (with_pop) env.columns.push_back({"pop11", kOne});
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::vector<Cell> row = {s.times[k], s.ratio12[k].real(), s.ratio12[k].imag(),
                             std::abs(s.ratio12[k])};
    if (with_pop) row.emplace_back(s.pop11[k]);
    env.add_row(std::move(row));
  }
}

ResultEnvelope run_degeneracy(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const auto table = table_for(static_cast<int>(c.integer("N")), c.spin());
  env.columns = {{"j", kOne}, {"nu", kOne}};
  for (std::size_t k = 0; k < table.size(); ++k) {
    env.add_row({table.j_at(k).value(), table.nu_at(k).str()});
  }
  env.diagnostics["hilbert_dimension"] = table.hilbert_dimension().str();
  env.diagnostics["invariants_hold"] = flag_cell(table.satisfies_invariants());
  return env;
}

ResultEnvelope run_distribution(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const int n = static_cast<int>(c.integer("N"));
  const HalfInteger s = c.spin();
  const Moments mom = moments(n, s);
  env.diagnostics["gaussian_mean"] = mom.mean;
  env.diagnostics["gaussian_variance"] = mom.variance;
  if (c.text("kind") == "exact") {
    const auto table = table_for(n, s);
    env.columns = {{"j", kOne}, {"P", kOne}, {"P_gaussian", kOne}};
    double mean = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k) {
      const HalfInteger j = table.j_at(k);
      const double p = exact_pmf(table, j);
      mean += p * j.value();
      env.add_row({j.value(), p, gaussian_pdf(n, s, j.value())});
    }
    env.diagnostics["exact_mean"] = mean;
    env.diagnostics["kolmogorov_distance"] = kolmogorov_distance(table);
  } else {
    const JDistribution dist{GaussianLaw{n, s}};
    env.diagnostics["normalization"] = dist.normalization();
    const auto grid = linear_grid(0.0, mom.mean + 8.0 * std::sqrt(mom.variance),
                                  static_cast<std::size_t>(c.integer("points")));
    env.columns = {{"j", kOne}, {"P_gaussian", kOne}};
    for (double j : grid) env.add_row({j, gaussian_pdf(n, s, j)});
  }
  return env;
}

ResultEnvelope run_xy_evolve(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const XYParams p = c.xy();
  const auto times = time_grid(c);
  XYDiagnostics diag;
  const auto series = coherence_evolution(p, c.qubit_state(), times, &diag);
  series_rows(env, series, "1/alpha", "ratio12", true);
  env.diagnostics["max_quadrature_error"] = diag.max_quadrature_error;
  env.diagnostics["worst_t"] = diag.worst_time;
  env.diagnostics["psi"] = asymptotic_coherence(p);
  env.diagnostics["tau_d"] = decoherence_time(p).tau_d;
  return env;
}

ResultEnvelope run_xy_asymptote(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const XYParams p = c.xy();
  env.columns = {{"psi", kOne}, {"psi_closed_form", kOne}, {"rho11_inf", kOne}};
  env.add_row({asymptotic_coherence(p), asymptotic_coherence_closed_form(p),
               asymptotic_population(p, c.qubit_state())});
  return env;
}

ResultEnvelope run_tau_d(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const DecoherenceTime tau = decoherence_time(c.xy());
  env.columns = {{"tau_d", "1/alpha"}, {"tau_d_min", "1/alpha"}, {"degenerate", kOne}};
  env.add_row({tau.tau_d, tau.tau_d_min, flag_cell(tau.degenerate)});
  return env;
}

ResultEnvelope run_hp_boson(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const BosonParams p = c.boson();
  const auto series = boson_coherence_series(p, time_grid(c));
  series_rows(env, series, "1/alpha", "ratio12", false);
  env.diagnostics["n_max"] = static_cast<double>(thermal_truncation(p));
  return env;
}

ResultEnvelope run_ising_mf(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const IsingParams p = c.ising();
  const MeanFieldSolution sol = solve_order_parameter(p);
  const auto times = time_grid(c);
  const std::string method = c.text("method");
  const bool closed = method == "closed" || (method == "auto" && has_meanfield_closed_form(p.spin));
  const CoherenceSeries g = closed ? g_meanfield(p, sol, times) : g_meanfield_oracle(p, sol, times);
  series_rows(env, g, "1/J0", "g", false);
  if (closed) {
    env.columns.push_back({"abs_g_limit", kOne});
    for (std::size_t k = 0; k < times.size(); ++k) {
      env.rows[k].emplace_back(std::sqrt(g_meanfield_limit(p, sol, times[k])));
    }
  }
  env.diagnostics["m"] = sol.order_parameter;
  env.diagnostics["Theta"] = sol.theta;
  env.diagnostics["Tc"] = sol.critical_temperature;
  env.diagnostics["ordered"] = flag_cell(sol.ordered);
  if (sol.decay_valid) env.diagnostics["decay_valid"] = flag_cell(*sol.decay_valid);
  env.diagnostics["roots_found"] = static_cast<double>(sol.roots_found);
  env.diagnostics["bisection_iterations"] = static_cast<double>(sol.bisection_iterations);
  env.diagnostics["method"] = std::string(closed ? "closed" : "oracle");
  return env;
}

ResultEnvelope run_ising_exact(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const IsingParams p = c.ising();
  const ExactIsingResult r = g_exact(p, time_grid(c));
  series_rows(env, r.series, "1/J0", "g", false);
  env.diagnostics["revival_period"] = r.revival_period;
  env.diagnostics["gaussian_fit_sigma"] = r.gaussian_fit_sigma;
  return env;
}

ResultEnvelope run_compare(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  const MeanFieldComparison cmp = meanfield_vs_exact(c.ising(), time_grid(c));
  env.columns = {{"t", "1/J0"},
                 {"abs_g_exact", kOne},
                 {"abs_g_meanfield", kOne},
                 {"abs_g_meanfield_finite", kOne}};
  for (std::size_t k = 0; k < cmp.times.size(); ++k) {
    env.add_row({cmp.times[k], cmp.exact_abs[k], cmp.meanfield_abs[k], cmp.meanfield_finite_abs[k]});
  }
  env.diagnostics["max_deviation"] = cmp.max_deviation;
  env.diagnostics["exact_revival"] = cmp.exact_revival;
  env.diagnostics["meanfield_monotone"] = flag_cell(cmp.meanfield_monotone);
  env.diagnostics["m"] = cmp.solution.order_parameter;
  return env;
}

ResultEnvelope run_single(const RunConfig& c) {
  switch (c.command) {
    case Command::Degeneracy: return run_degeneracy(c);
    case Command::Distribution: return run_distribution(c);
    case Command::XYEvolve: return run_xy_evolve(c);
    case Command::XYAsymptote: return run_xy_asymptote(c);
    case Command::TauD: return run_tau_d(c);
    case Command::HPBoson: return run_hp_boson(c);
    case Command::IsingMF: return run_ising_mf(c);
    case Command::IsingExact: return run_ising_exact(c);
    case Command::Compare: return run_compare(c);
    case Command::Sweep: break;
  }
  throw ConfigError("nested sweep");
}

ResultEnvelope run_sweep(const RunConfig& c) {
  ResultEnvelope env = make_envelope(c);
  std::vector<ResultEnvelope> parts;
  for (const auto& v : c.sweep_values) parts.push_back(run_single(c.sweep_point(v)));

  const bool scalar = std::all_of(parts.begin(), parts.end(),
                                  [](const ResultEnvelope& e) { return e.rows.size() == 1; });
  if (scalar) {
    // One row per sweep value.
    env.columns.push_back({c.sweep_over, key_unit(c.sweep_over)});
    for (const auto& col : parts.front().columns) env.columns.push_back(col);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::vector<Cell> row;
      if (c.sweep_over == "S") {
        row.emplace_back(c.sweep_point(c.sweep_values[i]).spin().value());
      } else if (c.sweep_over == "kind" || c.sweep_over == "method") {
        row.emplace_back(c.sweep_values[i]);
      } else {
        row.emplace_back(c.sweep_point(c.sweep_values[i]).real(c.sweep_over));
      }
      row.insert(row.end(), parts[i].rows.front().begin(), parts[i].rows.front().end());
      env.add_row(std::move(row));
    }
  } else {
    // Wide layout: shared first column, then every other column once per sweep value.
    const auto& first = parts.front();
    env.columns.push_back(first.columns.front());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& p = parts[i];
      if (p.rows.size() != first.rows.size() || p.columns.front() != first.columns.front()) {
        throw InvalidArgument("sweep points produce different grids; cannot align columns");
      }
      for (std::size_t r = 0; r < p.rows.size(); ++r) {
        if (p.rows[r].front() != first.rows[r].front()) {
          throw InvalidArgument("sweep points produce different grids; cannot align columns");
        }
      }
      for (std::size_t col = 1; col < p.columns.size(); ++col) {
        env.columns.push_back({p.columns[col].name + "[" + c.sweep_over + "=" + c.sweep_values[i] + "]",
                               p.columns[col].unit});
      }
    }
    for (std::size_t r = 0; r < first.rows.size(); ++r) {
      std::vector<Cell> row = {first.rows[r].front()};
      for (const auto& p : parts) row.insert(row.end(), p.rows[r].begin() + 1, p.rows[r].end());
      env.add_row(std::move(row));
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& [k, v] : parts[i].diagnostics) {
      env.diagnostics[c.sweep_over + "=" + c.sweep_values[i] + ":" + k] = v;
    }
  }
  return env;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return format_number(std::get<double>(c));
}

}  // namespace

ResultEnvelope run(const RunConfig& config) {
  return config.command == Command::Sweep ? run_sweep(config) : run_single(config);
}

int main_entry(const std::vector<std::string>& args) {
  RunConfig config;
  try {
    config = parse_and_validate(args);
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
  ResultEnvelope env;
  try {
    env = run(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (config.format == OutputFormat::Json) {
      ResultEnvelope failed;
      failed.command = command_name(config.command);
      failed.config = config.echo();
      failed.version = version();
      failed.diagnostics["error"] = std::string(e.what());
      try {
        write_text(config.output_path, to_json(failed));
      } catch (const std::exception&) {
      }
    }
    return 1;
  }
  try {
    switch (config.format) {
      case OutputFormat::Csv: write_text(config.output_path, to_csv(env)); break;
      case OutputFormat::Json: write_text(config.output_path, to_json(env)); break;
      case OutputFormat::Svg: write_text(config.output_path, render_svg(env)); break;
    }
    if (!config.plot_path.empty()) emit_plot(env, config.plot_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& [k, v] : env.diagnostics) std::cerr << "# " << k << " = " << cell_text(v) << "\n";
  return 0;
}

}  // namespace spinbath::cli
