#pragma once

#include <cmath>
#include <optional>

#include "twpa/circuit.hpp"
#include "twpa/constants.hpp"

namespace fixtures {

using namespace twpa::units;

inline twpa::LineParams line(double junction_capacitance = 329 * fF) {
  return twpa::LineParams::from_inductance(10 * um, 100 * pH, junction_capacitance, 39 * fF, 2000);
}

inline twpa::ResonatorParams resonator(double coupling = 10 * fF) { return {coupling, 100 * pH, 7.036 * pF}; }

inline double w(double f_ghz) { return angular(f_ghz * GHz); }

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fixtures
