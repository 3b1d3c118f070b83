#include "qdm/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qdm {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t";
  for (const auto& label : traj.labels) {
    const auto name = format_label(label);
    out << ',' << name << "_re," << name << "_im," << name << "_abs";
  }
  out << ",norm\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& state = traj.states[k];
    out << number(traj.times[k]);
    for (const auto& z : state) out << ',' << number(z.real()) << ',' << number(z.imag()) << ',' << number(std::abs(z));
    out << ',' << number(norm(state)) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_out(path);
  write_trajectory_csv(out, traj);
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trajectory CSV is empty");
  const auto header = split(line);
  if (header.size() < 2 || header.front() != "t" || header.back() != "norm" || (header.size() - 2) % 3 != 0) {
    throw std::runtime_error("trajectory CSV header is malformed");
  }
  Trajectory traj;
  const std::size_t n = (header.size() - 2) / 3;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cell = header[1 + 3 * i];
    if (cell.size() < 4 || cell.substr(cell.size() - 3) != "_re") throw std::runtime_error("trajectory CSV header is malformed");
    traj.labels.push_back(parse_label(cell.substr(0, cell.size() - 3)));
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::runtime_error("trajectory CSV row " + std::to_string(row) + " has the wrong width");
    try {
      traj.times.push_back(std::stod(cells[0]));
      AmplitudeVector state(n);
      for (std::size_t i = 0; i < n; ++i) state[i] = {std::stod(cells[1 + 3 * i]), std::stod(cells[2 + 3 * i])};
      const double drift = std::abs(1.0 - norm(state));
      traj.norm_drift.push_back(drift);
      traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
      traj.states.push_back(std::move(state));
    } catch (const std::logic_error&) {
      throw std::runtime_error("trajectory CSV row " + std::to_string(row) + " is not numeric");
    }
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_trajectory_csv(in);
}

void write_lambda_csv(const std::filesystem::path& path, std::span<const double> times, std::span<const double> lambda) {
  if (times.size() != lambda.size()) throw std::invalid_argument("write_lambda_csv: length mismatch");
  auto out = open_out(path);
  out << "t,lambda\n";
  for (std::size_t k = 0; k < times.size(); ++k) out << number(times[k]) << ',' << number(lambda[k]) << '\n';
}

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<SpectrumPoint>& spectrum) {
  auto out = open_out(path);
  out << "freq_hz,magnitude\n";
  for (const auto& p : spectrum) out << number(p.freq_hz) << ',' << number(p.magnitude) << '\n';
}

}  // namespace qdm
