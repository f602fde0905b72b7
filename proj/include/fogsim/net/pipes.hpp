#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/time.hpp"
#include "fogsim/net/messages.hpp"

namespace fogsim::net {

// Delivery calendar of an infinite-server transport with FIFO order per
// source-destination pair: a later packet never overtakes an earlier one on
// the same pair, and independent pairs never interact.
class DeliveryCalendar {
 public:
  void add(devs::SimTime now, devs::SimTime delay, PhysicalPacket packet,
           const std::string& dest) {
    devs::SimTime arrival = now + delay;
    const auto key = std::make_pair(packet.source, dest);
    auto it = last_.find(key);
    if (it != last_.end() && it->second > arrival) arrival = it->second;
    last_[key] = arrival;
    pending_.emplace(arrival, Delivery{std::move(packet), dest});
  }

  bool empty() const { return pending_.empty(); }
  devs::SimTime next_time() const { return pending_.begin()->first; }

  // All deliveries due exactly at `t`, in insertion order.
  template <typename Fn>
  void for_each_due(devs::SimTime t, Fn&& fn) const {
    for (auto it = pending_.begin();
         it != pending_.end() && it->first == t; ++it) {
      fn(it->second.packet, it->second.dest);
    }
  }

  void pop_due(devs::SimTime t) {
    auto it = pending_.begin();
    while (it != pending_.end() && it->first == t) it = pending_.erase(it);
  }

  std::size_t size() const { return pending_.size(); }

 private:
  struct Delivery {
    PhysicalPacket packet;
    std::string dest;
  };
  std::multimap<devs::SimTime, Delivery> pending_;
  std::map<std::pair<std::string, std::string>, devs::SimTime> last_;
};

struct CrosshaulParams {
  double rate_bps = 1e10;       // per-link serialization rate
  double carrier_hz = 33e9;     // used by the attenuation stamp
  double tx_power_dbm = 30.0;   // transceiver transmit power
  double control_bits = 1000.0; // control-plane message size
};

struct NodePosition {
  double x_m = 0.0;
  double y_m = 0.0;
};

inline double distance_between(const NodePosition& a, const NodePosition& b) {
  const double dx = a.x_m - b.x_m, dy = a.y_m - b.y_m;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace fogsim::net
