#include "twpa/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "twpa/constants.hpp"
#include "twpa/errors.hpp"

namespace twpa {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double per_length_inductance(const LineParams& line) { return line.junction_inductance / line.cell_length; }

// count * log_value with 0 * (-inf) = 0
double scaled_log(double count, double log_value) { return count == 0.0 ? 0.0 : count * log_value; }

double log_cosh(double x) { return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2; }

double log_tanh(double x) {
  if (x == 0.0) return neg_inf;
  return std::log(-std::expm1(-2.0 * x)) - std::log1p(std::exp(-2.0 * x));
}

double log_sum_exp(const std::vector<double>& terms) {
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (peak == neg_inf) return neg_inf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

template <typename Fill>
PhotonDistribution grow_until_normalised(std::size_t n_max, Fill&& fill) {
  std::size_t n = std::clamp<std::size_t>(n_max, 1, distribution_cap);
  bool padded = n_max >= distribution_cap;
  while (true) {
    PhotonDistribution d;
    d.probabilities = fill(n);
    if (1.0 - d.total() < distribution_tail_bound) {
      // one extra doubling so the tail also drops out of the moments
      if (padded || n >= distribution_cap) return d;
      padded = true;
      n = std::min(2 * n, distribution_cap);
      continue;
    }
    if (n >= distribution_cap) {
      throw TruncationError(fmt::format("photon distribution tail {:.3g} exceeds {:g} at N_max = {}", 1.0 - d.total(),
                                        distribution_tail_bound, n));
    }
    n = std::min(2 * n, distribution_cap);
  }
}

void require_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError(fmt::format("amplification kappa must be non-negative and finite (got {})", kappa));
  }
}

}  // namespace

double modulation_dispersion(double lambda_n, double lambda_m) {
  const double r = lambda_n / lambda_m;
  return 2.0 / 3.0 * (r + 1.0 / r - 2.0);
}

double mixing_dispersion(const LineParams& line, const ModeSet& modes) {
  const double wp = modes[Mode::pump].omega;
  const double ws = modes[Mode::signal].omega;
  const double wi = modes[Mode::idler].omega;
  const double lp = modes[Mode::pump].lambda;
  const double ls = modes[Mode::signal].lambda;
  const double li = modes[Mode::idler].lambda;
  return line.junction_inductance * line.junction_capacitance / 6.0 *
         (wp * ws * (-2.0 * lp + 5.0 * ls - 3.0 * li) + wp * wi * (-2.0 * lp - 3.0 * ls + 5.0 * li) +
          ws * wi * (4.0 * lp - 2.0 * ls - 2.0 * li));
}

QuantumCouplings quantum_couplings_full(const LineParams& line, const ModeSet& modes, double quantisation_length) {
  if (!(quantisation_length > 0.0) || !std::isfinite(quantisation_length)) {
    throw DomainError(fmt::format("quantisation length must be positive (got {} m)", quantisation_length));
  }
  modes.require_propagating();
  const double ic = line.critical_current;
  const double lpul = per_length_inductance(line);

  QuantumCouplings qc;
  qc.quantisation_length = quantisation_length;
  for (std::size_t n = 0; n < 3; ++n) {
    for (std::size_t m = n; m < 3; ++m) {
      const ModeQuantities& a = modes[all_modes[n]];
      const ModeQuantities& b = modes[all_modes[m]];
      const double correction = modulation_dispersion(a.lambda, b.lambda);
      const double multiplicity = n == m ? 1.0 : 2.0;
      const double value = constants::hbar * a.lambda * a.omega * b.lambda * b.omega * multiplicity *
                           (1.0 + correction) / (16.0 * ic * ic * lpul * quantisation_length);
      qc.modulation_dispersion[n][m] = qc.modulation_dispersion[m][n] = correction;
      qc.modulation[n][m] = qc.modulation[m][n] = value;
    }
  }
  const ModeQuantities& p = modes[Mode::pump];
  const ModeQuantities& s = modes[Mode::signal];
  const ModeQuantities& i = modes[Mode::idler];
  qc.mixing_dispersion = mixing_dispersion(line, modes);
  qc.mixing = constants::hbar * p.lambda * p.omega * std::sqrt(s.lambda * s.omega * i.lambda * i.omega) *
              (1.0 + qc.mixing_dispersion) / (8.0 * ic * ic * lpul * quantisation_length);
  return qc;
}

ClassicalPumpCouplings classical_pump_couplings(const LineParams& line, const ModeSet& modes) {
  modes.require_propagating();
  const double ic = line.critical_current;
  const double lpul = per_length_inductance(line);
  const ModeQuantities& p = modes[Mode::pump];
  const double kp = p.wavenumber.real();
  const double denominator = 32.0 * ic * ic * lpul * lpul;

  ClassicalPumpCouplings cpc;
  for (Mode n : all_modes) {
    const ModeQuantities& q = modes[n];
    const double multiplicity = n == Mode::pump ? 1.0 : 4.0;
    cpc.modulation[index(n)] =
        kp * kp * q.lambda * q.omega * multiplicity * (1.0 + modulation_dispersion(p.lambda, q.lambda)) / denominator;
  }
  const ModeQuantities& s = modes[Mode::signal];
  const ModeQuantities& i = modes[Mode::idler];
  cpc.mixing = kp * kp * std::sqrt(s.lambda * s.omega * i.lambda * i.omega) * (1.0 + mixing_dispersion(line, modes)) /
               (16.0 * ic * ic * lpul * lpul);
  return cpc;
}

double operator_amplitude_scale(double omega, double capacitance_per_length, double quantisation_length) {
  return std::sqrt(omega * capacitance_per_length * quantisation_length / (2.0 * constants::hbar));
}

ClassicalPumpCouplings pump_limit(const QuantumCouplings& qc, const LineParams& line, const ModeSet& modes) {
  const ModeQuantities& p = modes[Mode::pump];
  const double scale = operator_amplitude_scale(p.omega, p.effective_capacitance / line.cell_length,
                                                qc.quantisation_length);
  const double photons_per_flux2 = scale * scale;
  ClassicalPumpCouplings cpc;
  for (Mode n : all_modes) {
    // (4 - 3 delta_pn) replaces (2 - delta_pn) once the pump is classical
    const double reweight = n == Mode::pump ? 1.0 : 2.0;
    cpc.modulation[index(n)] = qc.modulation_of(Mode::pump, n) * reweight * photons_per_flux2;
  }
  cpc.mixing = qc.mixing * photons_per_flux2;
  return cpc;
}

MismatchRate delta_omega_and_gt(const ClassicalPumpCouplings& cpc, double pump_power) {
  MismatchRate out;
  out.delta_omega = (4.0 * cpc.modulation[0] - cpc.modulation[1] - cpc.modulation[2]) * pump_power;
  const double drive = cpc.mixing * pump_power;
  out.rate = std::sqrt(cplx(drive * drive - 0.25 * out.delta_omega * out.delta_omega, 0.0));
  return out;
}

double amplification(const ClassicalPumpCouplings& cpc, double pump_power, double time) {
  return cpc.mixing * pump_power * time;
}

double gain_quantum(double n_signal, double n_idler, cplx correlation, const ClassicalPumpCouplings& cpc,
                    double pump_power, double time) {
  if (!(n_signal > 0.0)) throw DomainError("quantum gain needs a non-zero mean input signal photon number");
  const MismatchRate mr = delta_omega_and_gt(cpc, pump_power);
  const cplx gt = mr.rate * time;
  const cplx sh = time * (std::abs(gt) < 1e-6 ? 1.0 + gt * gt / 6.0 : std::sinh(gt) / gt);
  const cplx direct = std::cosh(gt) + I * (0.5 * mr.delta_omega) * sh;
  const cplx pair = I * cpc.mixing * pump_power * sh;
  return std::norm(direct) + std::norm(pair) * (n_idler + 1.0) / n_signal +
         2.0 * std::real(direct * std::conj(pair) * correlation) / n_signal;
}

double transit_time(const LineParams& line, const ModeSet& modes) {
  const ModeQuantities& s = modes[Mode::signal];
  if (s.stop_band) throw DomainError("signal lies in the resonator stop band; no transit time");
  return line.length() * s.wavenumber.real() / s.omega;
}

double PhotonDistribution::total() const {
  double sum = 0.0;
  for (double p : probabilities) sum += p;
  return sum;
}

double PhotonDistribution::mean() const {
  double sum = 0.0;
  for (std::size_t n = 0; n < probabilities.size(); ++n) sum += static_cast<double>(n) * probabilities[n];
  return sum;
}

double PhotonDistribution::variance() const {
  const double m = mean();
  double sum = 0.0;
  for (std::size_t n = 0; n < probabilities.size(); ++n) {
    const double d = static_cast<double>(n) - m;
    sum += d * d * probabilities[n];
  }
  return sum;
}

PhotonDistribution fock_output_distribution(double kappa, std::size_t n_max) {
  require_kappa(kappa);
  const double lt2 = 2.0 * log_tanh(kappa);
  const double lc = log_cosh(kappa);
  PhotonDistribution d = grow_until_normalised(n_max, [&](std::size_t n) {
    std::vector<double> p(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      p[k] = std::exp(scaled_log(static_cast<double>(k - 1), lt2) + std::log(static_cast<double>(k)) - 4.0 * lc);
    }
    return p;
  });
  d.input = InputKind::fock;
  d.kappa = kappa;
  return d;
}

PhotonDistribution coherent_output_distribution(cplx alpha, double kappa, std::size_t n_max) {
  require_kappa(kappa);
  const double a2 = std::norm(alpha);
  const double la2 = a2 == 0.0 ? neg_inf : std::log(a2);
  const double lt2 = 2.0 * log_tanh(kappa);
  const double lc = log_cosh(kappa);
  PhotonDistribution d = grow_until_normalised(n_max, [&](std::size_t n) {
    std::vector<double> log_factorial(n + 1);
    for (std::size_t k = 0; k <= n; ++k) log_factorial[k] = std::lgamma(static_cast<double>(k) + 1.0);
    std::vector<double> p(n + 1, 0.0);
    std::vector<double> terms;
    for (std::size_t total = 0; total <= n; ++total) {
      terms.assign(total + 1, neg_inf);
      for (std::size_t k = 0; k <= total; ++k) {
        const double binomial = log_factorial[total] - log_factorial[k] - log_factorial[total - k];
        terms[k] = scaled_log(static_cast<double>(total - k), lt2) + scaled_log(static_cast<double>(k), la2) +
                   binomial - 2.0 * (1.0 + static_cast<double>(k)) * lc - log_factorial[k];
      }
      p[total] = std::exp(log_sum_exp(terms) - a2);
    }
    return p;
  });
  d.input = InputKind::coherent;
  d.alpha = alpha;
  d.kappa = kappa;
  return d;
}

std::vector<HeatmapRow> distribution_heatmap(InputKind input, cplx alpha, const std::vector<double>& kappas,
                                             std::size_t n_display) {
  for (std::size_t j = 1; j < kappas.size(); ++j) {
    if (!(kappas[j] > kappas[j - 1])) throw DomainError("kappa grid must be strictly ascending");
  }
  const double input_mean = input == InputKind::fock ? 1.0 : std::norm(alpha);
  if (!(input_mean > 0.0)) throw DomainError("heatmap gain needs a non-vacuum input");
  std::vector<HeatmapRow> rows;
  rows.reserve(kappas.size());
  for (double kappa : kappas) {
    const PhotonDistribution d = input == InputKind::fock ? fock_output_distribution(kappa, n_display)
                                                          : coherent_output_distribution(alpha, kappa, n_display);
    HeatmapRow row;
    row.kappa = kappa;
    row.mean = d.mean();
    row.gain_db = 10.0 * std::log10(row.mean / input_mean);
    row.probabilities.assign(n_display + 1, 0.0);
    for (std::size_t n = 0; n <= n_display && n < d.probabilities.size(); ++n) {
      row.probabilities[n] = d.probabilities[n] < heatmap_floor ? 0.0 : d.probabilities[n];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace twpa
