#pragma once

#include <ostream>
#include <string>

#include "fogsim/net/messages.hpp"

namespace fogsim::ue {

// Service-to-antenna handoff: the payload plus its air size. The controller
// stamps the physical attributes of the current uplink grant.
struct UplinkMessage {
  net::Payload payload;
  double bits = 0.0;

  friend std::ostream& operator<<(std::ostream& os, const UplinkMessage& m) {
    return os << "uplink{" << m.payload << " " << m.bits << "b}";
  }
};

// Connectivity edge notified to the service blocks.
struct AccessStatus {
  bool connected = false;
  std::string ap_id;

  friend std::ostream& operator<<(std::ostream& os, const AccessStatus& s) {
    return os << "access{" << (s.connected ? "up@" + s.ap_id : "down") << "}";
  }
};

}  // namespace fogsim::ue
