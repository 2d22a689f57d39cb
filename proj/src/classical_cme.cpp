#include "twpa/classical_cme.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "twpa/constants.hpp"
#include "twpa/errors.hpp"
#include "twpa/rk4.hpp"

namespace twpa {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

FieldVector pack(const ModeAmplitudes& s) { return {s.pump, s.signal, s.idler}; }
ModeAmplitudes unpack(const FieldVector& v, double z) { return {v[0], v[1], v[2], z}; }

FieldVector rhs_vector(double z, const FieldVector& y, const ClassicalCouplings& cc) {
  const auto [xp, xs, xi] = cc.modulation;
  const auto [mp, ms, mi] = cc.mixing;
  const double power = std::norm(y[0]);
  const cplx forward = std::exp(I * (cc.delta_k * z));
  return {
      I * xp * power * y[0] + 2.0 * I * mp * std::conj(y[0]) * y[1] * y[2] * std::conj(forward),
      I * xs * power * y[1] + I * ms * y[0] * y[0] * std::conj(y[2]) * forward,
      I * xi * power * y[2] + I * mi * y[0] * y[0] * std::conj(y[1]) * forward,
  };
}

}  // namespace

cplx ClassicalCouplings::delta_modulation() const { return 2.0 * modulation[0] - modulation[1] - modulation[2]; }

cplx ClassicalCouplings::total_mismatch(double pump_power) const {
  return delta_k + delta_modulation() * pump_power;
}

ClassicalCouplings classical_couplings(const LineParams& line, const ModeSet& modes) {
  modes.require_propagating();
  const double kp = modes[Mode::pump].wavenumber.real();
  const double ks = modes[Mode::signal].wavenumber.real();
  const double ki = modes[Mode::idler].wavenumber.real();
  const double a = line.cell_length;
  const double l = line.junction_inductance;
  const double ic = line.critical_current;

  ClassicalCouplings cc;
  cc.delta_k = 2.0 * kp - ks - ki;
  const std::array<double, 3> k{kp, ks, ki};
  const std::array<double, 3> sign{1.0, -1.0, -1.0};
  for (Mode m : all_modes) {
    const std::size_t n = index(m);
    const ModeQuantities& q = modes[m];
    // i omega Z_Ceff = 1 / C_eff
    const cplx inverse_c = I * q.omega * effective_impedance(q.omega, line, modes.resonator());
    const cplx prefactor =
        std::pow(a, 4) * kp * kp * inverse_c / (16.0 * ic * ic * l * l * l * q.omega * q.omega);
    const double multiplicity = m == Mode::pump ? 1.0 : 2.0;
    cc.modulation[n] = prefactor * std::pow(k[n], 3) * multiplicity;
    cc.mixing[n] = prefactor * ks * ki * (k[n] - sign[n] * cc.delta_k);
  }
  return cc;
}

cplx pump_solution(cplx pump0, cplx pump_modulation, double z) {
  return pump0 * std::exp(I * pump_modulation * std::norm(pump0) * z);
}

cplx sinhc(cplx x) {
  if (std::abs(x) < 1e-6) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

cplx gain_rate(const ClassicalCouplings& cc, double pump_power) {
  const cplx half = 0.5 * cc.total_mismatch(pump_power);
  return std::sqrt(cc.mixing[1] * std::conj(cc.mixing[2]) * pump_power * pump_power - half * half);
}

SignalIdler analytic_evolution(cplx signal0, cplx idler0, cplx pump0, const ClassicalCouplings& cc, double z) {
  const double power = std::norm(pump0);
  const cplx half = 0.5 * cc.total_mismatch(power);
  const cplx g = gain_rate(cc, power);
  const cplx ch = std::cosh(g * z);
  const cplx sh = z * sinhc(g * z);  // sinh(g z) / g
  const cplx p2 = pump0 * pump0;
  // exp(M z) for M = [[-i dK/2, i X_s A^2], [-i X_i* conj(A^2), i dK/2]], M^2 = g^2
  const cplx signal = (ch - I * half * sh) * signal0 + I * cc.mixing[1] * p2 * sh * std::conj(idler0);
  const cplx idler_conj =
      (ch + I * half * sh) * std::conj(idler0) - I * std::conj(cc.mixing[2]) * std::conj(p2) * sh * signal0;
  const cplx drift = std::exp(I * half * z);
  return {drift * signal, drift * std::conj(idler_conj)};
}

SignalIdler to_lab_frame(const SignalIdler& corotating, cplx pump0, const ClassicalCouplings& cc, double z) {
  const double power = std::norm(pump0);
  return {corotating.signal * std::exp(I * cc.modulation[1] * power * z),
          corotating.idler * std::exp(I * cc.modulation[2] * power * z)};
}

double gain_analytic(cplx signal0, cplx idler0, cplx pump0, const ClassicalCouplings& cc, double length) {
  const double s0 = std::norm(signal0);
  if (s0 == 0.0) throw DomainError("gain is undefined for a zero input signal");
  const double power = std::norm(pump0);
  const cplx half = 0.5 * cc.total_mismatch(power);
  const cplx g = gain_rate(cc, power);
  const cplx sh = length * sinhc(g * length);
  const cplx direct = std::cosh(g * length) - I * half * sh;
  const cplx conversion = I * cc.mixing[1] * pump0 * pump0 * sh;
  return std::norm(direct) + std::norm(conversion) * std::norm(idler0) / s0 +
         2.0 * std::real(direct * signal0 * std::conj(conversion) * idler0) / s0;
}

ModeAmplitudes cme_rhs(const ModeAmplitudes& state, const ClassicalCouplings& cc) {
  return unpack(rhs_vector(state.z, pack(state), cc), state.z);
}

std::vector<ModeAmplitudes> integrate_cme(const ModeAmplitudes& state0, const ClassicalCouplings& cc, double length,
                                          std::size_t n_steps) {
  std::vector<ModeAmplitudes> trajectory;
  trajectory.reserve(n_steps + 1);
  rk4_integrate(
      pack(state0), state0.z, length, n_steps, [&](double z, const FieldVector& y) { return rhs_vector(z, y, cc); },
      [&](double z, const FieldVector& y) { trajectory.push_back(unpack(y, z)); });
  return trajectory;
}

ModeAmplitudes integrate_cme_endpoint(const ModeAmplitudes& state0, const ClassicalCouplings& cc, double length,
                                      std::size_t n_steps) {
  ModeAmplitudes last = state0;
  rk4_integrate(
      pack(state0), state0.z, length, n_steps, [&](double z, const FieldVector& y) { return rhs_vector(z, y, cc); },
      [&](double z, const FieldVector& y) { last = unpack(y, z); });
  return last;
}

std::array<double, 2> manley_rowe(const ModeAmplitudes& state, const ClassicalCouplings& cc) {
  const double xp = cc.mixing[0].real();
  const double xs = cc.mixing[1].real();
  const double xi = cc.mixing[2].real();
  const double signal = std::norm(state.signal) / xs;
  return {std::norm(state.pump) / (2.0 * xp) + signal, signal - std::norm(state.idler) / xi};
}

OperatingPoint make_operating_point(const LineParams& line, const std::optional<ResonatorParams>& res,
                                    double omega_pump, double pump_current, double omega_signal,
                                    double signal_current) {
  OperatingPoint op;
  op.modes = ModeSet::make(line, res, omega_pump, omega_signal);
  op.couplings = classical_couplings(line, op.modes);
  const ModeQuantities& p = op.modes[Mode::pump];
  const ModeQuantities& s = op.modes[Mode::signal];
  op.pump0 = std::abs(current_to_amplitude(pump_current, p.omega, p.impedance.real()));
  op.signal0 = current_to_amplitude(signal_current, s.omega, s.impedance.real());
  return op;
}

std::vector<double> FrequencyGrid::frequencies() const {
  validate();
  std::vector<double> f(points);
  if (points == 1) {
    f[0] = min_hz;
    return f;
  }
  const double step = (max_hz - min_hz) / static_cast<double>(points - 1);
  for (std::size_t j = 0; j < points; ++j) f[j] = min_hz + step * static_cast<double>(j);
  f.back() = max_hz;
  return f;
}

void FrequencyGrid::validate() const {
  if (points < 1) throw ConfigError("sweep needs at least one point");
  if (!(min_hz > 0.0)) throw ConfigError(fmt::format("sweep start must be positive (got {} Hz)", min_hz));
  if (points > 1 && !(max_hz > min_hz)) {
    throw ConfigError(fmt::format("sweep must be ascending (got {} .. {} Hz)", min_hz, max_hz));
  }
}

double to_db(double gain) { return 10.0 * std::log10(gain); }

SweepTable gain_sweep(const GainSweepSpec& spec) {
  spec.line.validate();
  const double omega_p = units::angular(spec.pump_frequency_hz);
  const double ip = spec.pump_current_ratio * spec.line.critical_current;
  const double is = spec.signal_current_ratio * spec.line.critical_current;

  auto gain_db = [&](const std::optional<ResonatorParams>& res, double omega_s, std::size_t& invalid) {
    try {
      const OperatingPoint op = make_operating_point(spec.line, res, omega_p, ip, omega_s, is);
      const double g = gain_analytic(op.signal0, 0.0, op.pump0, op.couplings, spec.line.length());
      if (std::isfinite(g) && g > 0.0) return to_db(g);
    } catch (const DomainError&) {
    }
    ++invalid;
    return nan;
  };

  SweepTable table;
  for (double f : spec.grid.frequencies()) {
    const double omega_s = units::angular(f);
    GainRow row;
    row.frequency_hz = f;
    row.gain_nopm_db = gain_db(std::nullopt, omega_s, table.invalid_nopm);
    if (spec.resonator) {
      row.gain_pm_db = gain_db(spec.resonator, omega_s, table.invalid_pm);
    } else {
      row.gain_pm_db = nan;
      ++table.invalid_pm;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace twpa
