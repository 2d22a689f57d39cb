#pragma once

// Classical coupled-mode description of degenerate four-wave mixing along
// the junction line: coupling constants, the undepleted-pump closed form and
// a fixed-step integrator for the full (depleting) equations.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "twpa/circuit.hpp"
#include "twpa/mode.hpp"

namespace twpa {

using cplx = std::complex<double>;

struct ClassicalCouplings {
  std::array<cplx, 3> modulation{};  ///< self/cross-phase modulation per mode [rad m^-1 Wb^-2]
  std::array<cplx, 3> mixing{};      ///< parametric mixing per mode [rad m^-1 Wb^-2]
  double delta_k = 0.0;              ///< 2 k_p - k_s - k_i [rad/m]

  cplx modulation_of(Mode m) const { return modulation[index(m)]; }
  cplx mixing_of(Mode m) const { return mixing[index(m)]; }
  /// 2 Xi_p - Xi_s - Xi_i
  cplx delta_modulation() const;
  /// Delta k + (2 Xi_p - Xi_s - Xi_i) |A_p0|^2
  cplx total_mismatch(double pump_power) const;
};

struct ModeAmplitudes {
  cplx pump;
  cplx signal;
  cplx idler;
  double z = 0.0;
};

/// Throws DomainError if any mode sits in the resonator stop band.
ClassicalCouplings classical_couplings(const LineParams& line, const ModeSet& modes);

/// Undepleted pump: A_p0 exp(i Xi_p |A_p0|^2 z).
cplx pump_solution(cplx pump0, cplx pump_modulation, double z);

/// sinh(x)/x with a series branch near zero.
cplx sinhc(cplx x);

/// Gain rate sqrt(X_s X_i* |A_p0|^4 - (Delta K/2)^2), principal branch.
cplx gain_rate(const ClassicalCouplings& cc, double pump_power);

struct SignalIdler {
  cplx signal;
  cplx idler;
};

/// Closed-form undepleted-pump solution in the frame co-rotating with the
/// modulation phase exp(i Xi_n |A_p0|^2 z).  Without pump the amplitudes are constant.
SignalIdler analytic_evolution(cplx signal0, cplx idler0, cplx pump0, const ClassicalCouplings& cc, double z);

/// Rotates co-rotating amplitudes at position z back to the coupled-mode frame.
SignalIdler to_lab_frame(const SignalIdler& corotating, cplx pump0, const ClassicalCouplings& cc, double z);

/// |A_s(l)|^2 / |A_s0|^2 as the sum of direct, idler-conversion and interference terms.
/// Throws DomainError when signal0 == 0.
double gain_analytic(cplx signal0, cplx idler0, cplx pump0, const ClassicalCouplings& cc, double length);

/// Right-hand side of the coupled-mode equations at position z.
ModeAmplitudes cme_rhs(const ModeAmplitudes& state, const ClassicalCouplings& cc);

/// Classical RK4 over [state0.z, state0.z + length]; returns n_steps + 1 samples.
/// Throws DivergenceError with the failing step on non-finite values.
std::vector<ModeAmplitudes> integrate_cme(const ModeAmplitudes& state0, const ClassicalCouplings& cc, double length,
                                          std::size_t n_steps);
/// Same integration keeping only the endpoint.
ModeAmplitudes integrate_cme_endpoint(const ModeAmplitudes& state0, const ClassicalCouplings& cc, double length,
                                      std::size_t n_steps);

/// The two flux-conservation quantities
/// |A_p|^2/(2 X_p) + |A_s|^2/X_s and |A_s|^2/X_s - |A_i|^2/X_i.
std::array<double, 2> manley_rowe(const ModeAmplitudes& state, const ClassicalCouplings& cc);

struct OperatingPoint {
  ModeSet modes;
  ClassicalCouplings couplings;
  cplx pump0;    ///< real and positive (pump phase reference)
  cplx signal0;  ///< -I_s Z_c,s / omega_s
};

/// Builds modes, couplings and input amplitudes from drive currents [A].
OperatingPoint make_operating_point(const LineParams& line, const std::optional<ResonatorParams>& res,
                                    double omega_pump, double pump_current, double omega_signal,
                                    double signal_current);

struct FrequencyGrid {
  double min_hz = 0.0;
  double max_hz = 0.0;
  std::size_t points = 1;

  /// Ascending, inclusive of both ends; a single point yields min_hz.
  std::vector<double> frequencies() const;
  void validate() const;
};

struct GainSweepSpec {
  LineParams line;
  std::optional<ResonatorParams> resonator;  ///< used for the phase-matched column
  double pump_frequency_hz = 0.0;
  double pump_current_ratio = 0.5;    ///< I_p / I_c
  double signal_current_ratio = 1e-6;  ///< I_s / I_c
  FrequencyGrid grid;
};

struct GainRow {
  double frequency_hz = 0.0;
  double gain_nopm_db = 0.0;
  double gain_pm_db = 0.0;
};

struct SweepTable {
  std::vector<GainRow> rows;
  std::size_t invalid_nopm = 0;  ///< rows marked NaN (stop band, pole, cutoff)
  std::size_t invalid_pm = 0;
};

/// Closed-form gain over the grid, without and with the resonators.
SweepTable gain_sweep(const GainSweepSpec& spec);

/// 10 log10(G)
double to_db(double gain);

}  // namespace twpa
