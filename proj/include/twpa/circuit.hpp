#pragma once

// Linear and dispersive properties of a Josephson-junction loaded transmission
// line, optionally with a phase-matching resonator shunting every unit cell.
//
// All quantities are SI: rad/s, H, F, m, Wb, A, Ohm.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "twpa/mode.hpp"

namespace twpa {

/// Unit-cell parameters of the junction line.
///
/// The zero-flux junction inductance and the critical current are tied by
/// L_J0 * I_c = phi0; use the named constructors to supply either one.
/// A junction capacitance of zero is accepted and gives the dispersionless line.
struct LineParams {
  double cell_length = 0.0;           ///< a [m]
  double junction_inductance = 0.0;   ///< L_J0 [H]
  double junction_capacitance = 0.0;  ///< C_J [F]
  double ground_capacitance = 0.0;    ///< C_g [F]
  double critical_current = 0.0;      ///< I_c [A]
  int n_cells = 1;

  static LineParams from_inductance(double cell_length, double junction_inductance, double junction_capacitance,
                                    double ground_capacitance, int n_cells);
  static LineParams from_critical_current(double cell_length, double critical_current, double junction_capacitance,
                                          double ground_capacitance, int n_cells);

  /// Total length l_T = n_cells * a.
  double length() const { return n_cells * cell_length; }
  /// Junction plasma cutoff 1/sqrt(L_J0 C_J) [rad/s]; infinite for C_J = 0.
  double cutoff() const;
  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

/// Series C_c coupling a parallel L_r C_r tank from each node to ground.
struct ResonatorParams {
  double coupling_capacitance = 0.0;  ///< C_c [F]
  double inductance = 0.0;            ///< L_r [H]
  double capacitance = 0.0;           ///< C_r [F]

  /// Bare tank resonance 1/sqrt(L_r C_r) [rad/s].
  double resonance() const;
  /// Frequency at which the coupled branch shorts the node, 1/sqrt(L_r (C_r + C_c)) [rad/s].
  /// The effective shunt capacitance diverges here.
  double loaded_pole() const;
  void validate() const;
};

/// Relative distance from the loaded pole inside which evaluation is refused.
inline constexpr double pole_guard = 1e-6;

/// Impedance of the shunt element to ground: C_g in parallel with the resonator branch.
std::complex<double> effective_impedance(double omega, const LineParams& line,
                                         const std::optional<ResonatorParams>& res = std::nullopt);

/// C_eff = 1 / (i omega Z_Ceff). Negative inside the resonator stop band.
double effective_capacitance(double omega, const LineParams& line,
                             const std::optional<ResonatorParams>& res = std::nullopt);

/// Lambda = 1 / (1 - L_J0 C_J omega^2).
double lambda_factor(double omega, const LineParams& line);

struct Wavenumber {
  std::complex<double> value;
  bool stop_band = false;  ///< evanescent: value is purely imaginary with Im > 0
};

Wavenumber wavenumber(double omega, const LineParams& line, const std::optional<ResonatorParams>& res = std::nullopt);

/// sqrt(L_J0 Lambda / C_eff); purely imaginary in the stop band.
std::complex<double> char_impedance(double omega, const LineParams& line,
                                    const std::optional<ResonatorParams>& res = std::nullopt);

/// omega / |Re k|. Throws DomainError in the stop band.
double phase_velocity(double omega, const LineParams& line, const std::optional<ResonatorParams>& res = std::nullopt);

/// Flux amplitude of a travelling wave carrying current I: A = -I Z_c / omega.
double current_to_amplitude(double current, double omega, double impedance);
double amplitude_to_current(double amplitude, double omega, double impedance);

/// Derived per-mode quantities.
struct ModeQuantities {
  double omega = 0.0;
  double lambda = 1.0;
  double effective_capacitance = 0.0;
  std::complex<double> wavenumber;
  bool stop_band = false;
  std::complex<double> impedance;
  double phase_velocity = 0.0;  ///< NaN in the stop band
};

/// Pump, signal and idler of a degenerate-pump four-wave-mixing process,
/// with omega_i = 2 omega_p - omega_s.
class ModeSet {
 public:
  static ModeSet make(const LineParams& line, const std::optional<ResonatorParams>& res, double omega_pump,
                      double omega_signal);

  const ModeQuantities& operator[](Mode m) const { return modes_[index(m)]; }
  const std::optional<ResonatorParams>& resonator() const { return resonator_; }
  bool propagating() const;
  /// Throws DomainError naming the first mode that sits in the stop band.
  void require_propagating() const;
  /// Non-fatal diagnostics (e.g. k a >= 1).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::array<ModeQuantities, 3> modes_{};
  std::optional<ResonatorParams> resonator_;
  std::vector<std::string> warnings_;
};

struct ValidityReport {
  double flux_ratio = 0.0;     ///< Delta Phi_J,p / phi0, estimated as k_p a |A_p,0| / phi0
  double current_ratio = 0.0;  ///< I_p / I_c
  bool taylor_ok = true;       ///< flux_ratio < flux_ratio_limit
  bool undepleted_ok = true;   ///< I_s,0 < I_p,0 / 10
  std::vector<std::string> messages;
};

inline constexpr double flux_ratio_limit = 1.2;
inline constexpr double current_ratio_limit = 0.78;
/// The pump stays undepleted while I_s < I_p / pump_to_signal_limit.
inline constexpr double pump_to_signal_limit = 10.0;

ValidityReport validity_check(double pump_current, double signal_current, const LineParams& line,
                              const ModeSet& modes);

}  // namespace twpa
