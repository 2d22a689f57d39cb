#pragma once

// Run configuration: one JSON document with engineering-unit keys, resolved
// to SI on load.  Unknown keys are rejected.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "twpa/circuit.hpp"
#include "twpa/classical_cme.hpp"

namespace twpa {

struct SignalSettings {
  double frequency_hz = 5.0e9;  ///< used by validity and cme
  double current_ratio = 1e-6;  ///< I_s / I_c for gain sweeps and validity
};

struct CmeSettings {
  double current_ratio = 0.05;  ///< I_s / I_c, large enough to deplete the pump
  std::size_t n_steps = 40000;
  std::size_t samples = 401;    ///< rows written along the line
  bool phase_matched = true;    ///< include the resonator when one is configured
};

struct QuantumSettings {
  double kappa_max = 3.0;
  std::size_t kappa_points = 61;
  std::size_t n_max = 60;  ///< largest photon number shown
  double alpha = 1.0;      ///< coherent input amplitude (real)
};

struct OutputSettings {
  std::string directory = "out";
  std::vector<std::string> formats{"csv"};  ///< subset of csv, json, svg

  bool wants(const std::string& format) const;
};

struct RunConfig {
  LineParams line;
  std::optional<ResonatorParams> resonator;
  double pump_frequency_hz = 5.97e9;
  double pump_current_ratio = 0.5;
  FrequencyGrid sweep{3e9, 9e9, 601};
  SignalSettings signal;
  CmeSettings cme;
  QuantumSettings quantum;
  OutputSettings output;

  GainSweepSpec gain_spec() const;
  /// kappa_points values from 0 to kappa_max; a single 0 when kappa_max is 0.
  std::vector<double> kappa_grid() const;
};

/// Line and resonator of the reference device; every section of a document
/// overrides these defaults key by key.
RunConfig default_config();

/// Throws ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::json& document);
RunConfig load_config(const std::filesystem::path& path);

/// Resolved configuration in SI units (Hz, H, F, m, A).
nlohmann::ordered_json to_si_json(const RunConfig& config);

}  // namespace twpa
