#pragma once

#include <memory>

#include "fogsim/phy/mcs.hpp"

namespace fogsim::net {

// Radio-interface constants shared by access points and devices.
struct RadioParams {
  double carrier_hz = 33e9;            // band n77 default of the reference setup
  double channel_bandwidth_hz = 1e8;   // per data channel
  double ap_tx_power_dbm = 50.0;
  double ap_gain_db = 0.0;
  double ap_noise_temp_k = 300.0;
  double ue_tx_power_dbm = 30.0;
  double ue_gain_db = 0.0;
  double ue_noise_temp_k = 300.0;
  double pss_period_s = 0.1;
  double rrc_period_s = 1.0;
  double handover_hysteresis_db = 3.0;
  double control_bits = 1000.0;
  double discovery_window_s = 0.2;     // 2x the PSS period
  double deny_backoff_s = 1.0;
  double request_timeout_s = 1.0;
  std::shared_ptr<const phy::McsTable> downlink_table;
  std::shared_ptr<const phy::McsTable> uplink_table;

  double ap_eirp_dbm() const { return ap_tx_power_dbm + ap_gain_db; }
  double ue_eirp_dbm() const { return ue_tx_power_dbm + ue_gain_db; }

  static RadioParams with_default_tables() {
    RadioParams p;
    p.downlink_table = std::make_shared<phy::McsTable>(phy::default_downlink_table());
    p.uplink_table = std::make_shared<phy::McsTable>(phy::default_uplink_table());
    return p;
  }
};

}  // namespace fogsim::net
