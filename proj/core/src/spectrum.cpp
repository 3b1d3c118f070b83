#include "qdm/entangle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace qdm {

namespace {

// FFTW's planner is not thread-safe; execution of a finished plan is.
std::mutex planner_mutex;

std::vector<Complex> forward_dft(std::span<const Complex> series) {
  const int n = static_cast<int>(series.size());
  std::vector<Complex> in(series.begin(), series.end());
  std::vector<Complex> out(series.size());
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()),
                            FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("dft_spectrum: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

void check_input(std::size_t n, double dt) {
  if (n == 0) throw std::invalid_argument("dft_spectrum: empty series");
  if (!(dt > 0.0)) throw std::invalid_argument("dft_spectrum: dt must be positive");
}

}  // namespace

std::vector<SpectrumPoint> dft_spectrum(std::span<const Complex> series, double dt) {
  check_input(series.size(), dt);
  const auto x = forward_dft(series);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const double df = 1.0 / (static_cast<double>(n) * dt);
  std::vector<SpectrumPoint> out;
  out.reserve(x.size());
  // Bins above n/2 are negative frequencies.
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::ptrdiff_t signed_k = k <= n / 2 ? k : k - n;
    out.push_back({static_cast<double>(signed_k) * df, std::abs(x[static_cast<std::size_t>(k)]) / static_cast<double>(n)});
  }
  std::sort(out.begin(), out.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.freq_hz < b.freq_hz; });
  return out;
}

std::vector<SpectrumPoint> dft_spectrum(std::span<const double> series, double dt) {
  check_input(series.size(), dt);
  std::vector<Complex> z(series.begin(), series.end());
  auto full = dft_spectrum(std::span<const Complex>(z), dt);
  std::erase_if(full, [](const SpectrumPoint& p) { return p.freq_hz < 0.0; });
  return full;
}

}  // namespace qdm
