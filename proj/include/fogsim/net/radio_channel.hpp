#pragma once

#include <map>
#include <string>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/pipes.hpp"
#include "fogsim/phy/delay.hpp"
#include "fogsim/phy/link.hpp"
#include "fogsim/telemetry/records.hpp"

namespace fogsim::net {

// One physical radio channel. Packets entering `in` are attenuated with the
// path-loss model over the current sender-receiver distance and delivered
// after propagation plus transmission delay, computed from the bandwidth and
// spectral efficiency stamped by the sender. Broadcast packets fan out to
// every receiver with per-receiver attenuation and delay.
class RadioChannel final : public devs::TimedAtomic {
 public:
  RadioChannel(std::string name, phy::RadioChannelId channel,
               std::map<std::string, NodePosition> initial_positions,
               const std::vector<std::string>& receivers)
      : TimedAtomic(std::move(name)),
        in(add_input<PhysicalPacket>("in")),
        position_in(add_input<PositionUpdate>("position_in")),
        telemetry(add_output<telemetry::Record>("telemetry")),
        channel_(channel),
        positions_(std::move(initial_positions)) {
    for (const auto& id : receivers) {
      out_[id] = &add_output<PhysicalPacket>("to_" + id);
    }
  }

  void output() override {
    for (const auto& w : warnings_) telemetry.send(w);
    if (!calendar_.empty() && calendar_.next_time() == imminent_time()) {
      calendar_.for_each_due(
          imminent_time(),
          [this](const PhysicalPacket& p, const std::string& dest) {
            out_.at(dest)->send(p);
          });
    }
  }

  void on_internal() override {
    warnings_.clear();
    if (!calendar_.empty() && calendar_.next_time() == now()) {
      calendar_.pop_due(now());
    }
    rearm();
  }

  void on_external() override {
    for (const auto& u : position_in.bag()) {
      positions_[u.node_id] = {u.x_m, u.y_m};
    }
    for (const auto& p : in.bag()) enqueue(p);
    rearm();
  }

  phy::RadioChannelId channel() const { return channel_; }
  std::size_t in_flight() const { return calendar_.size(); }

  devs::Port<PhysicalPacket>& port_to(const std::string& node) {
    auto it = out_.find(node);
    if (it == out_.end()) {
      throw ConfigError(full_path() + " has no receiver " + node);
    }
    return *it->second;
  }

  devs::Port<PhysicalPacket>& in;
  devs::Port<PositionUpdate>& position_in;
  devs::Port<telemetry::Record>& telemetry;

 private:
  void rearm() {
    if (!warnings_.empty()) {
      schedule_in(devs::SimTime::zero());
    } else if (!calendar_.empty()) {
      schedule_at(calendar_.next_time());
    } else {
      passivate();
    }
  }

  void enqueue(const PhysicalPacket& p) {
    auto src = positions_.find(p.source);
    if (src == positions_.end()) {
      fault("unknown sender position: " + p.source);
    }
    std::vector<std::string> dests;
    if (p.destination == phy::kBroadcast) {
      for (const auto& [id, port] : out_) dests.push_back(id);
    } else {
      if (out_.find(p.destination) == out_.end()) {
        fault("unknown destination: " + p.destination);
      }
      dests.push_back(p.destination);
    }
    const double rate =
        phy::bit_rate_bps(p.bandwidth_hz, p.spectral_efficiency_bps_hz);
    if (!(rate > 0.0)) {
      fault("zero-rate packet from " + p.source +
            "; senders must queue until a usable grant");
    }
    for (const auto& dest : dests) {
      auto dst = positions_.find(dest);
      if (dst == positions_.end()) fault("unknown receiver position: " + dest);
      const double d = distance_between(src->second, dst->second);
      if (d == 0.0) {
        warnings_.push_back(telemetry::Warning{
            full_path(), "co-located endpoints " + p.source + "/" + dest +
                             "; 0 dB path-loss floor applied"});
      }
      PhysicalPacket stamped = p;
      stamped.rx_power_dbm =
          p.tx_power_dbm - phy::path_loss_db(d, p.carrier_hz);
      calendar_.add(now(),
                    phy::propagation_delay(d) +
                        phy::transmission_delay(p.size_bits, rate),
                    std::move(stamped), dest);
    }
  }

  phy::RadioChannelId channel_;
  std::map<std::string, NodePosition> positions_;
  std::map<std::string, devs::Port<PhysicalPacket>*> out_;
  DeliveryCalendar calendar_;
  std::vector<telemetry::Record> warnings_;
};

}  // namespace fogsim::net
