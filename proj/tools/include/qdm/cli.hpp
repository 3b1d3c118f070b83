#pragma once

#include "qdm/trajectory.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace qdm::cli {

enum class Mode { simulate, emit_equations, concurrence, spectrum };

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericalError = 3,
  kToleranceBreach = 4,
};

struct RunManifest {
  std::filesystem::path config_path;
  Mode mode = Mode::simulate;
  /// Overrides [simulation] solver when set.
  std::optional<std::string> solver;
  std::filesystem::path out_dir;
  std::optional<double> dt;
  std::optional<double> t_end;
  unsigned jobs = 1;
};

std::optional<Mode> parse_mode(const std::string& name);
std::string to_string(Mode mode);

/// Executes one batch run and writes its outputs into `out_dir`
/// (created if needed): the result files of the mode, metadata.json, and a
/// copy of the configuration. Diagnostics go to `log`. Returns an ExitCode.
int run(const RunManifest& manifest, std::ostream& log);

struct CompareReport {
  double max_abs_error = 0.0;
  std::map<std::string, double> per_label;
};

/// Max |a - b| over every amplitude and output time. Throws
/// std::invalid_argument if the bases or time grids differ.
CompareReport compare(const Trajectory& a, const Trajectory& b);

/// Reads two trajectory CSVs, prints the report and returns
/// kToleranceBreach when the maximum error exceeds `tolerance`.
int compare_files(const std::filesystem::path& a, const std::filesystem::path& b, double tolerance,
                  std::ostream& log);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

}  // namespace qdm::cli
