#include "twpa/correspondence.hpp"

#include <cmath>
#include <limits>

#include "twpa/constants.hpp"
#include "twpa/errors.hpp"
#include "twpa/rk4.hpp"

namespace twpa {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::array<double, 3> wavenumbers(const ModeSet& modes) {
  return {modes[Mode::pump].wavenumber.real(), modes[Mode::signal].wavenumber.real(),
          modes[Mode::idler].wavenumber.real()};
}

void summarise(ComparisonTable& table) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    const ComparisonRow& row = table.rows[j];
    if (std::isnan(row.delta_db)) continue;
    if (std::abs(row.delta_db) > table.max_abs_delta_db) {
      table.max_abs_delta_db = std::abs(row.delta_db);
      table.worst_row = j;
    }
    if (row.gain_classical_db > peak) {
      peak = row.gain_classical_db;
      table.peak_row = j;
    }
  }
}

}  // namespace

ClassicalCouplings ClassicalisedCouplings::as_classical() const {
  ClassicalCouplings cc;
  for (std::size_t n = 0; n < 3; ++n) {
    cc.modulation[n] = modulation[n];
    cc.mixing[n] = mixing[n];
  }
  cc.delta_k = delta_k;
  return cc;
}

ClassicalisedCouplings classicalised_couplings(const LineParams& line, const ModeSet& modes,
                                               const ClassicalisedOptions& options) {
  const ClassicalPumpCouplings cpc = classical_pump_couplings(line, modes);
  ClassicalisedCouplings cqc;
  cqc.wavenumber = wavenumbers(modes);
  const auto [kp, ks, ki] = cqc.wavenumber;
  cqc.delta_k = 2.0 * kp - ks - ki;
  for (Mode m : all_modes) {
    const std::size_t n = index(m);
    const double weight = m == Mode::pump ? 2.0 : 1.0;
    cqc.modulation[n] = weight * cqc.wavenumber[n] * cpc.modulation[n] / modes[m].omega;
  }
  const double ws = modes[Mode::signal].omega;
  const double wi = modes[Mode::idler].omega;
  cplx correction = 1.0;
  if (options.dispersion_correction_length) {
    correction = 1.0 - I * cqc.delta_k * *options.dispersion_correction_length / 2.0;
  }
  cqc.mixing[1] = correction * ks * cpc.mixing / ws * std::sqrt(wi / ws);
  cqc.mixing[2] = correction * ki * cpc.mixing / wi * std::sqrt(ws / wi);
  return cqc;
}

ClassicalisedCouplings classicalised_couplings_explicit(const LineParams& line, const ModeSet& modes) {
  modes.require_propagating();
  const double a4 = std::pow(line.cell_length, 4);
  const double ic = line.critical_current;
  const double l3 = std::pow(line.junction_inductance, 3);
  const ModeQuantities& p = modes[Mode::pump];

  ClassicalisedCouplings cqc;
  cqc.wavenumber = wavenumbers(modes);
  const auto [kp, ks, ki] = cqc.wavenumber;
  cqc.delta_k = 2.0 * kp - ks - ki;
  for (Mode m : all_modes) {
    const ModeQuantities& q = modes[m];
    const double k = cqc.wavenumber[index(m)];
    const double multiplicity = m == Mode::pump ? 1.0 : 2.0;
    cqc.modulation[index(m)] = a4 * kp * kp * k * k * k * multiplicity *
                               (1.0 + modulation_dispersion(p.lambda, q.lambda)) /
                               (16.0 * q.effective_capacitance * ic * ic * l3 * q.omega * q.omega);
  }
  const double cs = modes[Mode::signal].effective_capacitance;
  const double ci = modes[Mode::idler].effective_capacitance;
  const double common = a4 * kp * kp * ks * ki * (1.0 + mixing_dispersion(line, modes)) /
                        (16.0 * std::sqrt(cs * ci) * ic * ic * l3);
  const double ws = modes[Mode::signal].omega;
  const double wi = modes[Mode::idler].omega;
  cqc.mixing[1] = common * ks / (ws * ws);
  cqc.mixing[2] = common * ki / (wi * wi);
  return cqc;
}

cplx amplitude_to_operator(cplx amplitude, double omega, double capacitance_per_length, double quantisation_length) {
  return -I * operator_amplitude_scale(omega, capacitance_per_length, quantisation_length) * amplitude;
}

cplx operator_to_amplitude(cplx op, double omega, double capacitance_per_length, double quantisation_length) {
  return I * op / operator_amplitude_scale(omega, capacitance_per_length, quantisation_length);
}

double spatial_from_temporal(double temporal_shift, double wavenumber, double omega) {
  return wavenumber / omega * temporal_shift;
}

double mapped_modulation_mismatch(const ClassicalPumpCouplings& cpc, const ModeSet& modes, double pump_power) {
  double sum = 0.0;
  for (Mode m : all_modes) {
    const ModeQuantities& q = modes[m];
    // pump rate 2 xi'_p, counted twice; signal and idler rates xi'_n
    const double weight = m == Mode::pump ? 4.0 : -1.0;
    sum += spatial_from_temporal(weight * cpc.modulation[index(m)] * pump_power, q.wavenumber.real(), q.omega);
  }
  return sum;
}

std::vector<ModeAmplitudes> integrate_heisenberg(const ModeAmplitudes& state0, const ClassicalisedCouplings& cqc,
                                                 double length, std::size_t n_steps) {
  const auto [kp, ks, ki] = cqc.wavenumber;
  const auto [xp, xs, xi] = cqc.modulation;
  const cplx ms = cqc.mixing[1];
  const cplx mi = cqc.mixing[2];
  auto rhs = [&](double, const FieldVector& y) -> FieldVector {
    const double power = std::norm(y[0]);
    const cplx p2 = y[0] * y[0];
    return {
        I * (kp + xp * power) * y[0],
        I * (ks + xs * power) * y[1] + I * ms * p2 * std::conj(y[2]),
        I * (ki + xi * power) * y[2] + I * mi * p2 * std::conj(y[1]),
    };
  };
  std::vector<ModeAmplitudes> trajectory;
  trajectory.reserve(n_steps + 1);
  rk4_integrate({state0.pump, state0.signal, state0.idler}, state0.z, length, n_steps, rhs,
                [&](double z, const FieldVector& y) { trajectory.push_back({y[0], y[1], y[2], z}); });
  return trajectory;
}

ComparisonTable compare_gain(const GainSweepSpec& spec, bool phase_matched) {
  spec.line.validate();
  const std::optional<ResonatorParams> res = phase_matched ? spec.resonator : std::nullopt;
  if (phase_matched && !res) throw ConfigError("phase-matched comparison needs resonator parameters");
  const double omega_p = units::angular(spec.pump_frequency_hz);
  const double ip = spec.pump_current_ratio * spec.line.critical_current;
  const double is = spec.signal_current_ratio * spec.line.critical_current;
  const double length = spec.line.length();

  ComparisonTable table;
  for (double f : spec.grid.frequencies()) {
    ComparisonRow row{f, nan, nan, nan};
    try {
      const OperatingPoint op = make_operating_point(spec.line, res, omega_p, ip, units::angular(f), is);
      const ClassicalCouplings quantum = classicalised_couplings(spec.line, op.modes).as_classical();
      const double gc = gain_analytic(op.signal0, 0.0, op.pump0, op.couplings, length);
      const double gq = gain_analytic(op.signal0, 0.0, op.pump0, quantum, length);
      if (std::isfinite(gc) && gc > 0.0 && std::isfinite(gq) && gq > 0.0) {
        row.gain_classical_db = to_db(gc);
        row.gain_classicalised_db = to_db(gq);
        row.delta_db = row.gain_classicalised_db - row.gain_classical_db;
      }
    } catch (const DomainError&) {
    }
    if (std::isnan(row.delta_db)) {
      row.gain_classical_db = row.gain_classicalised_db = nan;
      ++table.invalid;
    }
    table.rows.push_back(row);
  }
  summarise(table);
  return table;
}

double peak_concentration(const ComparisonTable& table, double window_db) {
  if (table.rows.empty()) return nan;
  const double peak = table.rows[table.peak_row].gain_classical_db;
  double inside = 0.0;
  double outside = 0.0;
  std::size_t n_inside = 0;
  std::size_t n_outside = 0;
  for (const ComparisonRow& row : table.rows) {
    if (std::isnan(row.delta_db)) continue;
    if (row.gain_classical_db >= peak - window_db) {
      inside += std::abs(row.delta_db);
      ++n_inside;
    } else {
      outside += std::abs(row.delta_db);
      ++n_outside;
    }
  }
  if (n_inside == 0 || n_outside == 0) return nan;
  return (inside / n_inside) / (outside / n_outside);
}

ComparisonSummary compare_gain(const GainSweepSpec& spec) {
  ComparisonSummary summary;
  summary.without_pm = compare_gain(spec, false);
  if (spec.resonator) summary.with_pm = compare_gain(spec, true);
  return summary;
}

}  // namespace twpa
