#include "qdm/cli.hpp"

#include "qdm/analytic.hpp"
#include "qdm/basis.hpp"
#include "qdm/config_file.hpp"
#include "qdm/entangle.hpp"
#include "qdm/model.hpp"
#include "qdm/numeric.hpp"
#include "qdm/rabi.hpp"
#include "qdm/trajectory_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace qdm::cli {

namespace {

using nlohmann::json;

struct Prepared {
  ConfigFile file;
  IntegratorSpec spec;
  std::string solver;
};

Prepared prepare(const RunManifest& m) {
  Prepared p{load_config(m.config_path), {}, {}};
  const auto& sim = p.file.simulation;
  p.solver = m.solver.value_or(sim.solver);
  if (p.solver != "analytic" && p.solver != "euler" && p.solver != "rk4") {
    throw ConfigError("unknown solver '" + p.solver + "' (expected analytic, euler or rk4)");
  }
  p.spec.method = p.solver == "euler" ? Method::euler : Method::rk4;
  p.spec.dt = m.dt.value_or(sim.dt);
  p.spec.t_end = m.t_end.value_or(sim.t_end);
  p.spec.output_stride = sim.output_stride;
  try {
    p.spec.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

// Output grid shared by the analytic path and the integrators.
std::vector<double> output_times(const IntegratorSpec& spec) {
  std::vector<double> times;
  const std::size_t steps = spec.step_count();
  for (std::size_t k = 0; k <= steps; ++k)
    if (k % spec.output_stride == 0 || k == steps) times.push_back(static_cast<double>(k) * spec.dt);
  return times;
}

Trajectory solve(const RabiSystem& system, const Prepared& p) {
  const AmplitudeVector phi0 = initial_state(system);
  if (p.solver != "analytic") return integrate(system, phi0, p.spec);
  if (system.config.mode_count() != 1 || !system.rwa) {
    throw ConfigError("the analytic solver covers a single-mode field under the rotating-wave approximation only; "
                      "use --solver euler or rk4 for this configuration");
  }
  const auto times = output_times(p.spec);
  try {
    return solve_single_mode(system, phi0, times);
  } catch (const AnalyticScopeError& e) {
    throw ConfigError(std::string("analytic solver: ") + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

void copy_config(const RunManifest& m, const Prepared& p) {
  std::ofstream out(m.out_dir / "config.ini", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write config copy");
  out << p.file.text;
}

json base_metadata(const RunManifest& m, const Prepared& p) {
  return json{{"mode", to_string(m.mode)},
              {"config_file", m.config_path.filename().string()},
              {"config_copy", "config.ini"},
              {"config_hash_fnv1a64", fnv1a_hex(p.file.text)},
              {"solver", p.solver},
              {"dt", p.spec.dt},
              {"t_end", p.spec.t_end},
              {"output_stride", p.spec.output_stride},
              {"jobs", m.jobs}};
}

void add_trajectory_stats(json& meta, const Trajectory& traj) {
  meta["output_samples"] = traj.times.size();
  meta["leakage"] = traj.leakage;
  meta["terminal_norm_drift"] = traj.norm_drift.empty() ? 0.0 : traj.norm_drift.back();
  meta["max_norm_drift"] = traj.max_norm_drift;
}

int run_simulate(const RunManifest& m, const Prepared& p, bool spectrum, std::ostream& log) {
  const ValidatedConfig cfg = validate(p.file.system);
  const BasisSet basis = build_basis(cfg);
  const RabiSystem system = build_rabi_system(cfg, basis);
  const Trajectory traj = solve(system, p);
  write_trajectory_csv(m.out_dir / "trajectory.csv", traj);

  json meta = base_metadata(m, p);
  meta["basis_size"] = basis.size();
  meta["terms"] = system.terms.size();
  meta["dropped_terms"] = system.dropped_terms;
  add_trajectory_stats(meta, traj);

  if (spectrum) {
    const auto& sim = p.file.simulation;
    if (!sim.spectrum_label) throw ConfigError("spectrum mode needs [spectrum] label");
    BasisLabel label;
    try {
      label = parse_label(*sim.spectrum_label);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("[spectrum] label: " + std::string(e.what()));
    }
    const auto idx = basis.find(label);
    if (!idx) throw ConfigError("[spectrum] label " + *sim.spectrum_label + " is not in the basis");
    if (traj.times.size() < 2) throw ConfigError("spectrum mode needs at least two output samples");
    const double sample = traj.times[1] - traj.times[0];
    // The final sample may fall off the uniform grid when t_end is not a stride multiple.
    std::size_t count = traj.times.size();
    if (count > 2 && std::abs((traj.times[count - 1] - traj.times[count - 2]) - sample) > 1e-9 * sample) --count;
    std::vector<SpectrumPoint> spec;
    if (sim.spectrum_quantity == "complex") {
      std::vector<Complex> series;
      for (std::size_t k = 0; k < count; ++k) series.push_back(traj.states[k][*idx]);
      spec = dft_spectrum(std::span<const Complex>(series), sample);
    } else {
      std::vector<double> series;
      for (std::size_t k = 0; k < count; ++k) {
        const Complex z = traj.states[k][*idx];
        series.push_back(sim.spectrum_quantity == "re" ? z.real() : sim.spectrum_quantity == "im" ? z.imag() : std::abs(z));
      }
      spec = dft_spectrum(std::span<const double>(series), sample);
    }
    write_spectrum_csv(m.out_dir / "spectrum.csv", spec);
    meta["spectrum_label"] = *sim.spectrum_label;
    meta["spectrum_quantity"] = sim.spectrum_quantity;
    meta["spectrum_samples"] = count;
  }

  write_json(m.out_dir / "metadata.json", meta);
  log << "basis " << basis.size() << " states, " << traj.times.size() << " samples, terminal norm drift "
      << meta["terminal_norm_drift"].get<double>() << '\n';
  return kSuccess;
}

int run_emit(const RunManifest& m, const Prepared& p, std::ostream& log) {
  const ValidatedConfig cfg = validate(p.file.system);
  const BasisSet basis = build_basis(cfg);
  const RabiSystem system = build_rabi_system(cfg, basis);
  {
    std::ofstream out(m.out_dir / "equations.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write equations.json");
    out << rabi_system_to_json(system) << '\n';
  }
  json deps = json::object();
  for (const auto& label : basis.labels()) {
    json direct = json::array();
    for (const auto& d : direct_dependencies(system, label)) direct.push_back(format_label(d));
    json closure = json::array();
    for (const auto& d : dependency_closure(system, label)) closure.push_back(format_label(d));
    deps[format_label(label)] = {{"direct", std::move(direct)}, {"closure", std::move(closure)}};
  }
  write_json(m.out_dir / "dependencies.json", deps);

  json meta = base_metadata(m, p);
  meta["basis_size"] = basis.size();
  meta["terms"] = system.terms.size();
  meta["dropped_terms"] = system.dropped_terms;
  write_json(m.out_dir / "metadata.json", meta);
  log << system.terms.size() << " coupling terms over " << basis.size() << " states\n";
  return kSuccess;
}

int run_concurrence(const RunManifest& m, const Prepared& p, std::ostream& log) {
  if (p.solver == "analytic") throw ConfigError("concurrence mode integrates a two-mode system; use euler or rk4");
  ConcurrenceParams params{p.file.system, p.spec, p.file.simulation.concurrence_n_max, m.jobs};
  if (params.n_max < 2) throw ConfigError("[concurrence] n_max must be at least 2");
  // Validate once up front so problem-statement errors surface as such.
  for (int n = 2; n <= params.n_max; ++n) (void)build_basis(validate(shell_config(params.config, n)));

  const ConcurrenceResult result = concurrence_run(params);
  write_lambda_csv(m.out_dir / "lambda.csv", result.times, result.lambda);

  json meta = base_metadata(m, p);
  json shells = json::array();
  for (std::size_t s = 0; s < result.shells.size(); ++s) {
    const int n_sum = static_cast<int>(s) + 2;
    const auto dir = m.out_dir / ("shell_" + std::to_string(n_sum));
    std::filesystem::create_directories(dir);
    write_trajectory_csv(dir / "trajectory.csv", result.shells[s]);
    json entry{{"n_sum", n_sum}, {"directory", dir.filename().string()}, {"basis_size", result.shells[s].labels.size()}};
    add_trajectory_stats(entry, result.shells[s]);
    shells.push_back(std::move(entry));
  }
  meta["n_max"] = params.n_max;
  meta["photon_bounds"] = {result.n1_max, result.n2_max};
  meta["shells"] = std::move(shells);
  write_json(m.out_dir / "metadata.json", meta);
  log << result.shells.size() << " shells, " << result.times.size() << " samples, final lambda "
      << (result.lambda.empty() ? 0.0 : result.lambda.back()) << '\n';
  return kSuccess;
}

}  // namespace

std::optional<Mode> parse_mode(const std::string& name) {
  if (name == "simulate") return Mode::simulate;
  if (name == "emit-equations") return Mode::emit_equations;
  if (name == "concurrence") return Mode::concurrence;
  if (name == "spectrum") return Mode::spectrum;
  return std::nullopt;
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::simulate: return "simulate";
    case Mode::emit_equations: return "emit-equations";
    case Mode::concurrence: return "concurrence";
    case Mode::spectrum: return "spectrum";
  }
  return "unknown";
}

int run(const RunManifest& manifest, std::ostream& log) {
  try {
    const Prepared prepared = prepare(manifest);
    std::filesystem::create_directories(manifest.out_dir);
    copy_config(manifest, prepared);
    switch (manifest.mode) {
      case Mode::simulate: return run_simulate(manifest, prepared, false, log);
      case Mode::spectrum: return run_simulate(manifest, prepared, true, log);
      case Mode::emit_equations: return run_emit(manifest, prepared, log);
      case Mode::concurrence: return run_concurrence(manifest, prepared, log);
    }
    return kFailure;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    log << "numerical failure at step " << e.step() << ": " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kFailure;
  }
}

CompareReport compare(const Trajectory& a, const Trajectory& b) {
  if (a.labels != b.labels) throw std::invalid_argument("compare: trajectories use different bases");
  if (a.times.size() != b.times.size()) throw std::invalid_argument("compare: time grids differ in length");
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    const double scale = std::max(std::abs(a.times[k]), std::abs(b.times[k]));
    if (std::abs(a.times[k] - b.times[k]) > 1e-9 * scale) throw std::invalid_argument("compare: time grids differ");
  }
  CompareReport report;
  for (const auto& label : a.labels) report.per_label[format_label(label)] = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
      const double err = std::abs(a.states[k][i] - b.states[k][i]);
      auto& slot = report.per_label[format_label(a.labels[i])];
      slot = std::max(slot, err);
      report.max_abs_error = std::max(report.max_abs_error, err);
    }
  }
  return report;
}

int compare_files(const std::filesystem::path& a, const std::filesystem::path& b, double tolerance, std::ostream& log) {
  CompareReport report;
  try {
    report = compare(read_trajectory_csv(a), read_trajectory_csv(b));
  } catch (const std::exception& e) {
    log << "compare: " << e.what() << '\n';
    return kConfigError;
  }
  char line[128];
  for (const auto& [label, err] : report.per_label) {
    std::snprintf(line, sizeof line, "%-16s %.6e\n", label.c_str(), err);
    log << line;
  }
  std::snprintf(line, sizeof line, "max_abs_error %.6e (tolerance %.3e)\n", report.max_abs_error, tolerance);
  log << line;
  return report.max_abs_error > tolerance ? kToleranceBreach : kSuccess;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qdm::cli
