#pragma once

#include <cmath>

#include "fogsim/errors.hpp"
#include "fogsim/phy/constants.hpp"

namespace fogsim::phy {

// Free-space path loss in dB. The propagation model is pluggable at the
// channel level; this is the default. Co-located endpoints (d == 0) are
// defined as a 0 dB floor so the link stays usable; callers flag it.
inline double path_loss_db(double distance_m, double carrier_hz) {
  if (distance_m == 0.0) return 0.0;
  if (!(distance_m > 0.0) || !(carrier_hz > 0.0)) {
    throw ConfigError("path_loss_db requires distance >= 0 and frequency > 0");
  }
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(carrier_hz) +
         20.0 * std::log10(4.0 * kPi / kSpeedOfLight);
}

// Thermal noise power k*T*B referenced to 1 mW, in dBm.
inline double noise_power_dbm(double temperature_k, double bandwidth_hz) {
  if (!(temperature_k > 0.0) || !(bandwidth_hz > 0.0)) {
    throw ConfigError("noise_power_dbm requires T > 0 and B > 0");
  }
  return 10.0 * std::log10(kBoltzmann * temperature_k * bandwidth_hz / 1e-3);
}

// One end-to-end radio link. bandwidth_hz is the receiver's allocated
// bandwidth, which sets the noise floor.
struct LinkBudget {
  double tx_power_dbm = 0.0;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  double noise_temperature_k = 290.0;
  double carrier_hz = 0.0;
  double distance_m = 0.0;
  double bandwidth_hz = 0.0;
};

inline double snr_db(const LinkBudget& b) {
  if (b.distance_m < 0.0 || !(b.noise_temperature_k > 0.0) ||
      !(b.bandwidth_hz > 0.0)) {
    throw ConfigError("invalid link budget");
  }
  return b.tx_power_dbm + b.tx_gain_db + b.rx_gain_db -
         path_loss_db(b.distance_m, b.carrier_hz) -
         noise_power_dbm(b.noise_temperature_k, b.bandwidth_hz);
}

// SNR from a measured receive power, used when the attenuated power arrives
// stamped on a packet rather than recomputed from geometry.
inline double snr_from_rx_dbm(double rx_power_dbm, double rx_gain_db,
                              double temperature_k, double bandwidth_hz) {
  return rx_power_dbm + rx_gain_db -
         noise_power_dbm(temperature_k, bandwidth_hz);
}

}  // namespace fogsim::phy
