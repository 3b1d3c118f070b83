#include "qdm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdm {

namespace {

constexpr std::size_t kNanGuardInterval = 10000;

bool all_finite(std::span<const Complex> phi) {
  return std::all_of(phi.begin(), phi.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double boundary_population(const RabiSystem& system, std::span<const Complex> phi) {
  double p = 0.0;
  for (auto idx : system.boundary_states) p += std::norm(phi[idx]);
  return p;
}

void check_initial(const RabiSystem& system, std::span<const Complex> phi0) {
  if (phi0.size() != system.basis.size()) throw std::invalid_argument("integrate: initial state dimension mismatch");
  if (std::abs(norm(phi0) - 1.0) > 1e-9) throw std::invalid_argument("integrate: initial state is not normalized");
}

// Shared stepping loop; `advance` moves phi from t_n to t_{n+1}.
template <typename Advance>
Trajectory run(const RabiSystem& system, std::span<const Complex> phi0, const IntegratorSpec& spec,
               Advance&& advance) {
  spec.check();
  check_initial(system, phi0);
  const std::size_t steps = spec.step_count();

  Trajectory traj;
  traj.labels = system.basis.labels();
  AmplitudeVector phi(phi0.begin(), phi0.end());

  auto record = [&](std::size_t step) {
    const double drift = std::abs(1.0 - norm(phi));
    traj.times.push_back(static_cast<double>(step) * spec.dt);
    traj.states.push_back(phi);
    traj.norm_drift.push_back(drift);
    traj.leakage = std::max(traj.leakage, boundary_population(system, phi));
  };

  record(0);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * spec.dt;
    advance(t, phi);
    const std::size_t done = step + 1;
    const double drift = std::abs(1.0 - norm(phi));
    if (!std::isfinite(drift) || (done % kNanGuardInterval == 0 && !all_finite(phi))) {
      throw NumericalError("integration produced non-finite amplitudes at step " + std::to_string(done), done);
    }
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    if (done % spec.output_stride == 0 || done == steps) {
      if (!all_finite(phi)) {
        throw NumericalError("integration produced non-finite amplitudes at step " + std::to_string(done), done);
      }
      record(done);
    }
  }
  return traj;
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "euler") return Method::euler;
  if (name == "rk4") return Method::rk4;
  throw std::invalid_argument("unknown integration method '" + std::string(name) + "'");
}

std::string_view to_string(Method method) { return method == Method::euler ? "euler" : "rk4"; }

void IntegratorSpec::check() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrator: dt must be positive");
  if (!(t_end >= dt) || !std::isfinite(t_end)) throw std::invalid_argument("integrator: t_end must be >= dt");
  if (output_stride < 1) throw std::invalid_argument("integrator: output_stride must be >= 1");
}

std::size_t IntegratorSpec::step_count() const {
  // Tolerate t_end values that are an integer multiple of dt up to rounding.
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

double norm(std::span<const Complex> phi) {
  double s = 0.0;
  for (const auto& z : phi) s += std::norm(z);
  return s;
}

Trajectory integrate_euler(const RabiSystem& system, std::span<const Complex> phi0, const IntegratorSpec& spec) {
  AmplitudeVector k(system.basis.size());
  const double dt = spec.dt;
  return run(system, phi0, spec, [&](double t, AmplitudeVector& phi) {
    rhs(system, t, phi, k);
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += dt * k[i];
  });
}

Trajectory integrate_rk4(const RabiSystem& system, std::span<const Complex> phi0, const IntegratorSpec& spec) {
  const std::size_t n = system.basis.size();
  AmplitudeVector k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double dt = spec.dt;
  return run(system, phi0, spec, [&](double t, AmplitudeVector& phi) {
    rhs(system, t, phi, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + 0.5 * dt * k1[i];
    rhs(system, t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + 0.5 * dt * k2[i];
    rhs(system, t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + dt * k3[i];
    rhs(system, t + dt, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) phi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  });
}

Trajectory integrate(const RabiSystem& system, std::span<const Complex> phi0, const IntegratorSpec& spec) {
  return spec.method == Method::euler ? integrate_euler(system, phi0, spec) : integrate_rk4(system, phi0, spec);
}

AmplitudeVector initial_state(const RabiSystem& system) {
  AmplitudeVector phi(system.basis.size());
  for (const auto& amp : system.config.config().initial_state) {
    auto idx = system.basis.find(BasisLabel{amp.levels, amp.photons});
    if (!idx) throw ConfigError("initial state label outside the basis");
    phi[*idx] += amp.amplitude;
  }
  return phi;
}

}  // namespace qdm
