#pragma once

#include "qdm/entangle.hpp"
#include "qdm/trajectory.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace qdm {

/// Header `t,<label>_re,<label>_im,<label>_abs,...,norm`; values printed
/// with 17 significant digits so a round trip is exact.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Reads the format above back. Norm drift is recomputed from the
/// amplitudes. Throws std::runtime_error on malformed input.
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// `t,lambda`
void write_lambda_csv(const std::filesystem::path& path, std::span<const double> times, std::span<const double> lambda);

/// `freq_hz,magnitude`
void write_spectrum_csv(const std::filesystem::path& path, const std::vector<SpectrumPoint>& spectrum);

}  // namespace qdm
