#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace twpa {

enum class Mode : std::size_t { pump = 0, signal = 1, idler = 2 };

inline constexpr std::array<Mode, 3> all_modes{Mode::pump, Mode::signal, Mode::idler};

constexpr std::size_t index(Mode m) { return static_cast<std::size_t>(m); }

constexpr std::string_view name(Mode m) {
  switch (m) {
    case Mode::pump: return "pump";
    case Mode::signal: return "signal";
    case Mode::idler: return "idler";
  }
  return "?";
}

}  // namespace twpa
