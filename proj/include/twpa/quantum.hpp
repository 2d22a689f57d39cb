#pragma once

// Discrete-mode quantum description of the three-mode mixing process:
// coupling constants of the interaction Hamiltonian, the classical-pump
// limit, phase-preserving quantum gain and output photon statistics.
//
// Self- and cross-modulation enter with the factor (4 - 3 delta_pn), i.e. a
// cross term four times the self term in the classical-pump limit.  Some
// treatments quote a factor of two here; both lead to the same operator
// equations of motion once normal ordering is accounted for.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "twpa/circuit.hpp"

namespace twpa {

using cplx = std::complex<double>;
using ModeMatrix = std::array<std::array<double, 3>, 3>;

struct QuantumCouplings {
  ModeMatrix modulation{};             ///< xi_nm [rad/s], symmetric
  double mixing = 0.0;                 ///< chi [rad/s]
  double quantisation_length = 0.0;    ///< l_q [m]
  ModeMatrix modulation_dispersion{};  ///< Lambda_xi,nm
  double mixing_dispersion = 0.0;      ///< Lambda_chi

  double modulation_of(Mode n, Mode m) const { return modulation[index(n)][index(m)]; }
};

/// Couplings with the pump treated as a classical field of amplitude A_p.
struct ClassicalPumpCouplings {
  std::array<double, 3> modulation{};  ///< xi'_n [rad s^-1 Wb^-2]
  double mixing = 0.0;                 ///< chi' [rad s^-1 Wb^-2]
};

/// (2/3)(r + 1/r - 2) with r = Lambda_n / Lambda_m.
double modulation_dispersion(double lambda_n, double lambda_m);
/// Three-bracket dispersion correction of the mixing constant.
double mixing_dispersion(const LineParams& line, const ModeSet& modes);

/// Throws DomainError for l_q <= 0 or a stop-band mode.
QuantumCouplings quantum_couplings_full(const LineParams& line, const ModeSet& modes, double quantisation_length);

/// Direct evaluation; contains no quantisation length.
ClassicalPumpCouplings classical_pump_couplings(const LineParams& line, const ModeSet& modes);

/// The same constants reached from the full couplings by substituting the
/// pump operator with its classical amplitude.
ClassicalPumpCouplings pump_limit(const QuantumCouplings& qc, const LineParams& line, const ModeSet& modes);

/// sqrt(omega C' l_q / 2 hbar), with C' the shunt capacitance per unit length;
/// maps a flux amplitude onto the dimensionless mode operator, a = -i scale A.
double operator_amplitude_scale(double omega, double capacitance_per_length, double quantisation_length);

struct MismatchRate {
  double delta_omega = 0.0;  ///< (4 xi'_p - xi'_s - xi'_i) |A_p|^2 [rad/s]
  cplx rate;                 ///< sqrt(|chi'|^2 |A_p|^4 - (delta_omega/2)^2) [rad/s]
};

MismatchRate delta_omega_and_gt(const ClassicalPumpCouplings& cpc, double pump_power);

/// kappa = chi' |A_p|^2 t
double amplification(const ClassicalPumpCouplings& cpc, double pump_power, double time);

/// Mean signal photon gain after time t, including amplified vacuum and the
/// input signal-idler correlation <a_s a_i>.  Throws DomainError for n_s0 <= 0.
double gain_quantum(double n_signal, double n_idler, cplx correlation, const ClassicalPumpCouplings& cpc,
                    double pump_power, double time);

/// Time for the signal to traverse the line, l_T k_s / omega_s.
double transit_time(const LineParams& line, const ModeSet& modes);

enum class InputKind { fock, coherent };

struct PhotonDistribution {
  std::vector<double> probabilities;  ///< indexed by signal photon number
  InputKind input = InputKind::fock;
  cplx alpha;
  double kappa = 0.0;

  std::size_t n_max() const { return probabilities.empty() ? 0 : probabilities.size() - 1; }
  double total() const;
  double mean() const;
  double variance() const;
};

inline constexpr double distribution_tail_bound = 1e-9;
inline constexpr std::size_t distribution_cap = 4096;

/// Signal photon-number distribution after amplification of |1>_s |0>_i.
/// n_max doubles until the missing mass is below the tail bound, then once
/// more so the moments converge as well; TruncationError beyond the cap.
PhotonDistribution fock_output_distribution(double kappa, std::size_t n_max = 64);

/// Same for a coherent signal |alpha>_s with idler vacuum.
PhotonDistribution coherent_output_distribution(cplx alpha, double kappa, std::size_t n_max = 64);

inline constexpr double heatmap_floor = 1e-6;

struct HeatmapRow {
  double kappa = 0.0;
  double gain_db = 0.0;  ///< mean output photons over mean input photons
  double mean = 0.0;
  std::vector<double> probabilities;  ///< N = 0..n_display, entries below heatmap_floor set to 0
};

/// Rows for an ascending kappa grid.
std::vector<HeatmapRow> distribution_heatmap(InputKind input, cplx alpha, const std::vector<double>& kappas,
                                             std::size_t n_display);

}  // namespace twpa
