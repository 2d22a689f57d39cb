#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fmt/format.h>
#include <vector>

#include "twpa/errors.hpp"

namespace twpa {

using FieldVector = std::array<std::complex<double>, 3>;

namespace detail {

inline FieldVector axpy(const FieldVector& y, double h, const FieldVector& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

inline bool finite(const FieldVector& y) {
  for (const auto& c : y) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

}  // namespace detail

/// Fixed-step classical Runge-Kutta over [z0, z0 + length].
/// `rhs(z, y)` returns dy/dz; `visit(z, y)` is called at every grid point
/// including both ends.  Throws DivergenceError on non-finite state.
template <typename Rhs, typename Visit>
void rk4_integrate(const FieldVector& initial, double z0, double length, std::size_t n_steps, Rhs&& rhs,
                   Visit&& visit) {
  if (n_steps < 1) throw DomainError("integration needs at least one step");
  const double h = length / static_cast<double>(n_steps);
  FieldVector y = initial;
  visit(z0, y);
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double z = z0 + h * static_cast<double>(step);
    const FieldVector k1 = rhs(z, y);
    const FieldVector k2 = rhs(z + 0.5 * h, detail::axpy(y, 0.5 * h, k1));
    const FieldVector k3 = rhs(z + 0.5 * h, detail::axpy(y, 0.5 * h, k2));
    const FieldVector k4 = rhs(z + h, detail::axpy(y, h, k3));
    for (std::size_t j = 0; j < 3; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!detail::finite(y)) {
      throw DivergenceError(fmt::format("integration diverged at step {} (z = {:.6g} m)", step + 1, z + h), step + 1);
    }
    visit(z0 + h * static_cast<double>(step + 1), y);
  }
}

}  // namespace twpa
