#pragma once

#include <numbers>

namespace qjump {

inline constexpr double kFluxQuantum = 2.067833848e-15;  // Wb
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace qjump
