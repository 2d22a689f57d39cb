#pragma once

// Quantum equations of motion with a classical pump, rewritten in space and
// expressed in classical amplitudes, side by side with the classical
// coupled-mode equations.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "twpa/circuit.hpp"
#include "twpa/classical_cme.hpp"
#include "twpa/quantum.hpp"

namespace twpa {

using cplx = std::complex<double>;

struct ClassicalisedOptions {
  /// When set, multiplies the mixing constants by (1 - i dk l_q / 2) with this
  /// l_q [m].  The result depends on the quantisation length and is kept only
  /// for comparison; off by default.
  std::optional<double> dispersion_correction_length;
};

struct ClassicalisedCouplings {
  std::array<double, 3> modulation{};  ///< Xi^q_n [rad m^-1 Wb^-2]
  std::array<cplx, 3> mixing{};        ///< X^q_n; the pump entry is zero
  std::array<double, 3> wavenumber{};  ///< k_n [rad/m]
  double delta_k = 0.0;                ///< 2 k_p - k_s - k_i

  double modulation_of(Mode m) const { return modulation[index(m)]; }
  cplx mixing_of(Mode m) const { return mixing[index(m)]; }

  /// The same constants in the shape of the classical couplings, so the
  /// closed-form gain and the co-rotating integrator apply unchanged.
  ClassicalCouplings as_classical() const;
};

/// Built from the classical-pump constants: Xi^q_p = 2 k_p xi'_p / omega_p,
/// Xi^q_n = k_n xi'_n / omega_n and X^q_s = (k_s chi' / omega_s) sqrt(omega_i / omega_s).
/// Throws DomainError for a stop-band mode.
ClassicalisedCouplings classicalised_couplings(const LineParams& line, const ModeSet& modes,
                                               const ClassicalisedOptions& options = {});

/// Direct closed forms in k, C_eff and the junction parameters:
/// Xi^q_n = a^4 k_p^2 k_n^3 (2 - delta_pn) (1 + Lambda_xi,pn) / (16 C_n I_c^2 L_J0^3 omega_n^2),
/// X^q_s  = a^4 k_p^2 k_s^2 k_i (1 + Lambda_chi) / (16 sqrt(C_s C_i) I_c^2 L_J0^3 omega_s^2).
ClassicalisedCouplings classicalised_couplings_explicit(const LineParams& line, const ModeSet& modes);

/// a = -i sqrt(omega C' l_q / 2 hbar) A, with C' the shunt capacitance per length.
cplx amplitude_to_operator(cplx amplitude, double omega, double capacitance_per_length, double quantisation_length);
cplx operator_to_amplitude(cplx op, double omega, double capacitance_per_length, double quantisation_length);

/// A temporal rate shift on a mode maps onto a wavenumber shift through
/// -omega dt = k dz, i.e. delta k = (k / omega) delta omega.
double spatial_from_temporal(double temporal_shift, double wavenumber, double omega);

/// Modulation part of the spatial mismatch obtained from the quantum
/// phase rates: 2 (k_p/omega_p) 2 xi'_p - (k_s/omega_s) xi'_s - (k_i/omega_i) xi'_i, times |A_p|^2.
double mapped_modulation_mismatch(const ClassicalPumpCouplings& cpc, const ModeSet& modes, double pump_power);

/// Fixed-step RK4 of the lab-frame equations
/// dA_p/dz = i (k_p + Xi^q_p |A_p|^2) A_p,
/// dA_n/dz = i (k_n + Xi^q_n |A_p|^2) A_n + i X^q_n A_p^2 conj(A_m).
/// Returns n_steps + 1 samples; DivergenceError on non-finite values.
std::vector<ModeAmplitudes> integrate_heisenberg(const ModeAmplitudes& state0, const ClassicalisedCouplings& cqc,
                                                 double length, std::size_t n_steps);

struct ComparisonRow {
  double frequency_hz = 0.0;
  double gain_classical_db = 0.0;
  double gain_classicalised_db = 0.0;
  double delta_db = 0.0;  ///< classicalised minus classical
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::size_t invalid = 0;       ///< NaN rows
  double max_abs_delta_db = 0.0;  ///< over valid rows
  std::size_t worst_row = 0;      ///< index of the largest |delta|
  std::size_t peak_row = 0;       ///< index of the largest classical gain
};

/// Both closed forms over the sweep grid, with the resonator if one is given.
ComparisonTable compare_gain(const GainSweepSpec& spec, bool phase_matched);

/// Mean |delta| over rows whose classical gain lies within window_db of the
/// peak, divided by the mean |delta| over the other valid rows.
double peak_concentration(const ComparisonTable& table, double window_db = 3.0);

struct ComparisonSummary {
  ComparisonTable without_pm;
  ComparisonTable with_pm;  ///< empty when the spec carries no resonator
};

ComparisonSummary compare_gain(const GainSweepSpec& spec);

}  // namespace twpa
