#pragma once

#include <limits>
#include <ostream>
#include <string>

namespace fogsim::phy {

inline constexpr const char* kBroadcast = "*";

// Message crossing the radio interface or the crosshaul. The sender stamps
// the transmission attributes; the transport stamps the attenuated receive
// power while delivering.
template <typename PayloadT>
struct BasicPhysicalPacket {
  PayloadT payload{};
  double size_bits = 0.0;
  double tx_power_dbm = 0.0;  // EIRP: transmit power plus antenna gain
  double bandwidth_hz = 0.0;
  double spectral_efficiency_bps_hz = 0.0;
  double carrier_hz = 0.0;
  std::string source;
  std::string destination;  // node id, or kBroadcast
  double rx_power_dbm = std::numeric_limits<double>::quiet_NaN();

  friend std::ostream& operator<<(std::ostream& os,
                                  const BasicPhysicalPacket& p) {
    return os << p.source << ">" << p.destination << " " << p.payload;
  }
};

// Five-channel radio structure: one broadcast channel, an FDD control pair
// and an FDD data pair. Control and data traffic never share a channel.
enum class RadioChannelId { pbch, pucch, pdcch, pusch, pdsch };

inline const char* to_string(RadioChannelId c) {
  switch (c) {
    case RadioChannelId::pbch: return "pbch";
    case RadioChannelId::pucch: return "pucch";
    case RadioChannelId::pdcch: return "pdcch";
    case RadioChannelId::pusch: return "pusch";
    case RadioChannelId::pdsch: return "pdsch";
  }
  return "?";
}

}  // namespace fogsim::phy
