#include "twpa/circuit.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "twpa/constants.hpp"
#include "twpa/errors.hpp"

namespace twpa {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(fmt::format("{} must be positive and finite (got {})", what, value));
  }
}

void require_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError(fmt::format("angular frequency must be positive (got {} rad/s)", omega));
  }
}

}  // namespace

LineParams LineParams::from_inductance(double cell_length, double junction_inductance, double junction_capacitance,
                                       double ground_capacitance, int n_cells) {
  LineParams p;
  p.cell_length = cell_length;
  p.junction_inductance = junction_inductance;
  p.junction_capacitance = junction_capacitance;
  p.ground_capacitance = ground_capacitance;
  p.critical_current = constants::phi0 / junction_inductance;
  p.n_cells = n_cells;
  p.validate();
  return p;
}

LineParams LineParams::from_critical_current(double cell_length, double critical_current, double junction_capacitance,
                                             double ground_capacitance, int n_cells) {
  require_positive(critical_current, "critical current I_c");
  return from_inductance(cell_length, constants::phi0 / critical_current, junction_capacitance, ground_capacitance,
                         n_cells);
}

double LineParams::cutoff() const {
  if (junction_capacitance == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(junction_inductance * junction_capacitance);
}

void LineParams::validate() const {
  require_positive(cell_length, "cell length a");
  require_positive(junction_inductance, "junction inductance L_J0");
  require_positive(ground_capacitance, "ground capacitance C_g");
  require_positive(critical_current, "critical current I_c");
  if (!(junction_capacitance >= 0.0) || !std::isfinite(junction_capacitance)) {
    throw DomainError(fmt::format("junction capacitance C_J must be non-negative (got {})", junction_capacitance));
  }
  if (n_cells < 1) throw DomainError(fmt::format("n_cells must be >= 1 (got {})", n_cells));
  const double product = junction_inductance * critical_current / constants::phi0;
  if (std::abs(product - 1.0) > 1e-9) {
    throw DomainError(fmt::format("L_J0 * I_c must equal phi0 (ratio {})", product));
  }
}

double ResonatorParams::resonance() const { return 1.0 / std::sqrt(inductance * capacitance); }

double ResonatorParams::loaded_pole() const {
  return 1.0 / std::sqrt(inductance * (capacitance + coupling_capacitance));
}

void ResonatorParams::validate() const {
  require_positive(coupling_capacitance, "resonator coupling capacitance C_c");
  require_positive(inductance, "resonator inductance L_r");
  require_positive(capacitance, "resonator capacitance C_r");
  require_positive(resonance(), "resonator frequency");
}

double effective_capacitance(double omega, const LineParams& line, const std::optional<ResonatorParams>& res) {
  require_omega(omega);
  if (!res) return line.ground_capacitance;
  const double pole = res->loaded_pole();
  if (std::abs(omega / pole - 1.0) < pole_guard) {
    throw SingularityError(fmt::format("frequency {:.9g} GHz is at the loaded resonator pole {:.9g} GHz",
                                       units::hertz(omega) / units::GHz, units::hertz(pole) / units::GHz),
                           units::hertz(pole));
  }
  const double w2 = omega * omega;
  // admittance of C_c in series with (L_r || C_r), divided by i omega
  const double branch = res->coupling_capacitance * (1.0 - res->inductance * res->capacitance * w2) /
                        (1.0 - res->inductance * (res->capacitance + res->coupling_capacitance) * w2);
  return line.ground_capacitance + branch;
}

std::complex<double> effective_impedance(double omega, const LineParams& line,
                                         const std::optional<ResonatorParams>& res) {
  const double c = effective_capacitance(omega, line, res);
  if (c == 0.0) {
    throw SingularityError(fmt::format("shunt admittance vanishes at {:.9g} GHz", units::hertz(omega) / units::GHz),
                           units::hertz(omega));
  }
  return {0.0, -1.0 / (omega * c)};
}

double lambda_factor(double omega, const LineParams& line) {
  if (!(omega >= 0.0)) throw DomainError(fmt::format("angular frequency must be non-negative (got {})", omega));
  const double x = line.junction_inductance * line.junction_capacitance * omega * omega;
  if (x >= 1.0) {
    throw DomainError(fmt::format("frequency {:.9g} GHz is at or above the junction plasma cutoff {:.9g} GHz",
                                  units::hertz(omega) / units::GHz, units::hertz(line.cutoff()) / units::GHz));
  }
  return 1.0 / (1.0 - x);
}

Wavenumber wavenumber(double omega, const LineParams& line, const std::optional<ResonatorParams>& res) {
  const double lambda = lambda_factor(omega, line);
  const double c = effective_capacitance(omega, line, res);
  const double k2 = omega * omega * line.junction_inductance * lambda * c / (line.cell_length * line.cell_length);
  if (k2 >= 0.0) return {{std::sqrt(k2), 0.0}, false};
  return {{0.0, std::sqrt(-k2)}, true};
}

std::complex<double> char_impedance(double omega, const LineParams& line, const std::optional<ResonatorParams>& res) {
  const double lambda = lambda_factor(omega, line);
  const double c = effective_capacitance(omega, line, res);
  return std::sqrt(std::complex<double>(line.junction_inductance * lambda / c, 0.0));
}

double phase_velocity(double omega, const LineParams& line, const std::optional<ResonatorParams>& res) {
  const Wavenumber k = wavenumber(omega, line, res);
  if (k.stop_band) {
    throw DomainError(fmt::format("no phase velocity at {:.9g} GHz: inside the resonator stop band",
                                  units::hertz(omega) / units::GHz));
  }
  return omega / std::abs(k.value.real());
}

double current_to_amplitude(double current, double omega, double impedance) {
  require_omega(omega);
  return -current * impedance / omega;
}

double amplitude_to_current(double amplitude, double omega, double impedance) {
  require_omega(omega);
  return -amplitude * omega / impedance;
}

ModeSet ModeSet::make(const LineParams& line, const std::optional<ResonatorParams>& res, double omega_pump,
                      double omega_signal) {
  line.validate();
  if (res) res->validate();
  ModeSet set;
  set.resonator_ = res;
  const std::array<double, 3> omegas{omega_pump, omega_signal, 2.0 * omega_pump - omega_signal};
  for (Mode m : all_modes) {
    const double omega = omegas[index(m)];
    if (!(omega > 0.0) || !(omega < line.cutoff())) {
      throw DomainError(fmt::format("{} frequency {:.9g} GHz must lie in (0, {:.9g}) GHz", name(m),
                                    units::hertz(omega) / units::GHz, units::hertz(line.cutoff()) / units::GHz));
    }
    ModeQuantities& q = set.modes_[index(m)];
    q.omega = omega;
    q.lambda = lambda_factor(omega, line);
    q.effective_capacitance = effective_capacitance(omega, line, res);
    const Wavenumber k = wavenumber(omega, line, res);
    q.wavenumber = k.value;
    q.stop_band = k.stop_band;
    q.impedance = char_impedance(omega, line, res);
    q.phase_velocity = k.stop_band ? std::numeric_limits<double>::quiet_NaN() : omega / k.value.real();
    if (!k.stop_band && k.value.real() * line.cell_length >= 1.0) {
      set.warnings_.push_back(fmt::format("{} mode has k a = {:.3g} >= 1; the long-wavelength continuum limit fails",
                                          name(m), k.value.real() * line.cell_length));
    }
  }
  return set;
}

bool ModeSet::propagating() const {
  for (const auto& q : modes_) {
    if (q.stop_band) return false;
  }
  return true;
}

void ModeSet::require_propagating() const {
  for (Mode m : all_modes) {
    const ModeQuantities& q = modes_[index(m)];
    if (q.stop_band) {
      throw DomainError(fmt::format("{} mode at {:.9g} GHz lies in the resonator stop band", name(m),
                                    units::hertz(q.omega) / units::GHz));
    }
  }
}

ValidityReport validity_check(double pump_current, double signal_current, const LineParams& line,
                              const ModeSet& modes) {
  if (pump_current < 0.0 || signal_current < 0.0) {
    throw DomainError("validity_check expects non-negative currents");
  }
  const ModeQuantities& pump = modes[Mode::pump];
  if (pump.stop_band) throw DomainError("pump lies in the resonator stop band");

  ValidityReport report;
  const double amplitude = std::abs(current_to_amplitude(pump_current, pump.omega, pump.impedance.real()));
  report.flux_ratio = pump.wavenumber.real() * line.cell_length * amplitude / constants::phi0;
  report.current_ratio = pump_current / line.critical_current;
  report.taylor_ok = report.flux_ratio < flux_ratio_limit;
  report.undepleted_ok = signal_current < pump_current / pump_to_signal_limit;

  if (!report.taylor_ok) {
    report.messages.push_back(fmt::format(
        "junction flux ratio {:.3f} exceeds {:.1f}: higher-order Josephson terms are no longer negligible",
        report.flux_ratio, flux_ratio_limit));
  }
  if (report.current_ratio >= current_ratio_limit) {
    report.messages.push_back(fmt::format("pump current {:.3f} I_c is at or above the {:.2f} I_c breakdown estimate",
                                          report.current_ratio, current_ratio_limit));
  }
  if (!report.undepleted_ok) {
    report.messages.push_back(
        fmt::format("signal current {:.3g} A is not below I_p/{:g} = {:.3g} A: the undepleted pump approximation fails; "
                    "use the full coupled-mode integration",
                    signal_current, pump_to_signal_limit, pump_current / pump_to_signal_limit));
  }
  for (const auto& w : modes.warnings()) report.messages.push_back(w);
  return report;
}

}  // namespace twpa
