#pragma once

#include <map>
#include <string>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/pipes.hpp"
#include "fogsim/phy/delay.hpp"
#include "fogsim/phy/link.hpp"

namespace fogsim::net {

// Star transport joining access points, EDCs and the core functions. Every
// message is attenuated over the link distance and delivered after
// transmission plus propagation delay. Uplink and downlink directions ride
// separate channels of an FDD pair, so opposite flows never queue against
// each other; per source-destination pair delivery is FIFO.
class Crosshaul final : public devs::TimedAtomic {
 public:
  Crosshaul(std::string name, CrosshaulParams params,
            const std::map<std::string, NodePosition>& nodes)
      : TimedAtomic(std::move(name)),
        in(add_input<PhysicalPacket>("in")),
        params_(params),
        nodes_(nodes) {
    for (const auto& [id, pos] : nodes_) {
      out_[id] = &add_output<PhysicalPacket>("to_" + id);
    }
  }

  void output() override {
    calendar_.for_each_due(
        imminent_time(),
        [this](const PhysicalPacket& p, const std::string& dest) {
          out_.at(dest)->send(p);
        });
  }

  void on_internal() override {
    calendar_.pop_due(now());
    if (!calendar_.empty()) {
      schedule_at(calendar_.next_time());
    } else {
      passivate();
    }
  }

  void on_external() override {
    for (const auto& p : in.bag()) {
      auto src = nodes_.find(p.source);
      auto dst = nodes_.find(p.destination);
      if (src == nodes_.end()) fault("unknown crosshaul node: " + p.source);
      if (dst == nodes_.end()) {
        fault("unknown crosshaul destination: " + p.destination);
      }
      const double d = distance_between(src->second, dst->second);
      PhysicalPacket stamped = p;
      stamped.rx_power_dbm =
          p.tx_power_dbm - phy::path_loss_db(d, params_.carrier_hz);
      calendar_.add(now(),
                    phy::transmission_delay(p.size_bits, params_.rate_bps) +
                        phy::propagation_delay(d),
                    std::move(stamped), p.destination);
    }
    schedule_at(calendar_.next_time());
  }

  std::size_t in_flight() const { return calendar_.size(); }

  devs::Port<PhysicalPacket>& port_to(const std::string& node) {
    auto it = out_.find(node);
    if (it == out_.end()) {
      throw ConfigError(full_path() + " has no node " + node);
    }
    return *it->second;
  }

  devs::Port<PhysicalPacket>& in;

 private:
  CrosshaulParams params_;
  std::map<std::string, NodePosition> nodes_;
  std::map<std::string, devs::Port<PhysicalPacket>*> out_;
  DeliveryCalendar calendar_;
};

}  // namespace fogsim::net
