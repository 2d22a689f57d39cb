#pragma once

// Truncated two-mode Fock space evolution under the classical-pump
// interaction Hamiltonian H = -hbar (r a_s+ a_i+ e^{-i dW t} + h.c.) in the
// co-rotating frame.  Quadratures use X = (a + a+)/sqrt(2), so the vacuum
// variance is 1/2.

#include <complex>
#include <cstddef>
#include <vector>

namespace twpa {

using cplx = std::complex<double>;

class TwoModeState {
 public:
  TwoModeState() : TwoModeState(1, 1) {}
  /// Vacuum in a dims_signal x dims_idler truncation.
  TwoModeState(std::size_t dims_signal, std::size_t dims_idler);

  static TwoModeState vacuum(std::size_t dims_signal, std::size_t dims_idler);
  static TwoModeState fock(std::size_t n_signal, std::size_t n_idler, std::size_t dims_signal,
                           std::size_t dims_idler);
  /// Product of coherent states, each cut where the Poisson tail drops below
  /// 1e-12 and renormalised; dims grow if the cut does not fit.
  static TwoModeState coherent(cplx alpha_signal, cplx alpha_idler, std::size_t dims_signal, std::size_t dims_idler);

  std::size_t dims_signal() const { return ds_; }
  std::size_t dims_idler() const { return di_; }
  cplx& operator()(std::size_t n_signal, std::size_t n_idler) { return coeffs_[n_signal * di_ + n_idler]; }
  const cplx& operator()(std::size_t n_signal, std::size_t n_idler) const { return coeffs_[n_signal * di_ + n_idler]; }
  /// Row-major, signal index slowest.
  const std::vector<cplx>& coefficients() const { return coeffs_; }

  double norm2() const;
  /// Probability on the highest signal row and highest idler column.
  double edge_occupancy() const;
  /// Zero-padded copy with larger dims.
  TwoModeState padded(std::size_t dims_signal, std::size_t dims_idler) const;

  double time = 0.0;     ///< [s]
  double leakage = 0.0;  ///< largest edge occupancy met while propagating

 private:
  std::size_t ds_;
  std::size_t di_;
  std::vector<cplx> coeffs_;
};

struct PropagationOptions {
  double occupancy_guard = 1e-6;  ///< dims double when the edge holds more than this
  std::size_t max_dim = 4096;
  double leakage_limit = 1e-4;  ///< TruncationError above this at max_dim
  double max_step_norm = 0.1;   ///< bound on the generator norm per Taylor application
  int taylor_terms = 12;
};

/// Time-ordered product of n_steps short-time propagators with the pump phase
/// taken at each step's midpoint.  rate = chi' |A_p|^2 [rad/s].
TwoModeState propagate(const TwoModeState& state0, cplx rate, double delta_omega, double duration,
                       std::size_t n_steps, const PropagationOptions& options = {});

/// exp(i kappa (a_s+ a_i+ + a_s a_i)) applied through the disentangled
/// (normal-ordered) product; the raising series is cut by the output dims,
/// which equals projecting the exact result.
TwoModeState squeeze_factored(const TwoModeState& state0, double kappa, std::size_t dims_signal,
                              std::size_t dims_idler);
TwoModeState squeeze_factored(const TwoModeState& state0, double kappa);

struct Moments {
  double n_signal = 0.0;
  double n_idler = 0.0;
  double var_n_signal = 0.0;
  cplx pair;  ///< <a_s a_i>
  double var_x_signal = 0.0;
  double var_p_signal = 0.0;
};

Moments moments(const TwoModeState& state);

/// Pr(n_s) summed over the idler.
std::vector<double> signal_marginal(const TwoModeState& state);

/// 32 for kappa <= 1, 128 for kappa <= 2; DomainError above.
std::size_t default_dims(double kappa);

}  // namespace twpa
