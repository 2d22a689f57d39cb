#pragma once

#include <numbers>

namespace twpa {

namespace constants {

inline constexpr double planck = 6.62607015e-34;
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double elementary_charge = 1.602176634e-19;

/// Reduced flux quantum hbar / 2e [Wb].
inline constexpr double phi0 = hbar / (2.0 * elementary_charge);

}  // namespace constants

// Multipliers from the engineering units used in configs to SI.
namespace units {

inline constexpr double GHz = 1e9;
inline constexpr double pH = 1e-12;
inline constexpr double pF = 1e-12;
inline constexpr double fF = 1e-15;
inline constexpr double uA = 1e-6;
inline constexpr double um = 1e-6;
inline constexpr double mm = 1e-3;

inline constexpr double angular(double frequency_hz) { return 2.0 * std::numbers::pi * frequency_hz; }
inline constexpr double hertz(double angular_frequency) { return angular_frequency / (2.0 * std::numbers::pi); }

}  // namespace units

}  // namespace twpa
