#pragma once

namespace fogsim::phy {

inline constexpr double kSpeedOfLight = 2.998e8;        // m/s
inline constexpr double kBoltzmann = 1.380649e-23;      // J/K
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace fogsim::phy
