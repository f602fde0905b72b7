#pragma once

#include "fogsim/devs/time.hpp"
#include "fogsim/errors.hpp"
#include "fogsim/phy/constants.hpp"

namespace fogsim::phy {

inline double bit_rate_bps(double bandwidth_hz, double efficiency_bps_hz) {
  if (bandwidth_hz < 0.0 || efficiency_bps_hz < 0.0) {
    throw ConfigError("bit_rate_bps requires non-negative inputs");
  }
  return bandwidth_hz * efficiency_bps_hz;
}

// Serialization time of a message. Callers must hold (not drop) traffic when
// the link rate is zero; see the antenna pending queues.
inline devs::SimTime transmission_delay(double size_bits, double rate_bps) {
  if (!(rate_bps > 0.0)) {
    throw ConfigError("transmission_delay requires rate > 0; stalled links "
                      "queue at the sender");
  }
  if (size_bits < 0.0) throw ConfigError("negative message size");
  return devs::SimTime(size_bits / rate_bps);
}

inline devs::SimTime propagation_delay(double distance_m) {
  if (distance_m < 0.0) throw ConfigError("negative distance");
  return devs::SimTime(distance_m / kSpeedOfLight);
}

}  // namespace fogsim::phy
