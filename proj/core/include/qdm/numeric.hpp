#pragma once

#include "qdm/rabi.hpp"
#include "qdm/trajectory.hpp"

#include <cstddef>
#include <span>
#include <string_view>

namespace qdm {

enum class Method { euler, rk4 };

Method parse_method(std::string_view name);
std::string_view to_string(Method method);

/// Default step for couplings of order 1e13-1e14 rad/s.
inline constexpr double kDefaultTimeStep = 5e-18;

struct IntegratorSpec {
  Method method = Method::rk4;
  double dt = kDefaultTimeStep;
  double t_end = 1e-13;
  std::size_t output_stride = 1;

  /// Throws std::invalid_argument unless dt > 0, t_end >= dt and stride >= 1.
  void check() const;
  [[nodiscard]] std::size_t step_count() const;
};

/// Forward differences: Phi^{n+1} = Phi^n + dt * rhs(t_n, Phi^n).
Trajectory integrate_euler(const RabiSystem& system, std::span<const Complex> phi0, const IntegratorSpec& spec);

/// Classical fourth-order Runge-Kutta on the same right-hand side.
Trajectory integrate_rk4(const RabiSystem& system, std::span<const Complex> phi0, const IntegratorSpec& spec);

Trajectory integrate(const RabiSystem& system, std::span<const Complex> phi0, const IntegratorSpec& spec);

/// Initial amplitudes from the configuration, placed on the system basis.
AmplitudeVector initial_state(const RabiSystem& system);

}  // namespace qdm
