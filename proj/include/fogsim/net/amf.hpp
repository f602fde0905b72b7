#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/pipes.hpp"

namespace fogsim::net {

// Access policy: either every device is authorized (wildcard) or only the
// listed ids are. Verdicts are stateless and deterministic per device.
struct AmfPolicy {
  bool wildcard = true;
  std::set<std::string> authorized;

  static AmfPolicy allow_all() { return {true, {}}; }
  static AmfPolicy allow_only(std::set<std::string> ids) {
    return {false, std::move(ids)};
  }
};

inline bool amf_check(const std::string& ue_id, const AmfPolicy& policy) {
  return policy.wildcard || policy.authorized.count(ue_id) > 0;
}

// Core-network access and mobility management function: answers each access
// request from an AP with a grant or deny verdict.
class Amf final : public devs::TimedAtomic {
 public:
  Amf(std::string name, std::string node_id, AmfPolicy policy,
      CrosshaulParams xh)
      : TimedAtomic(std::move(name)),
        in(add_input<PhysicalPacket>("in")),
        out(add_output<PhysicalPacket>("out")),
        node_id_(std::move(node_id)),
        policy_(std::move(policy)),
        xh_(xh) {}

  void output() override {
    for (const auto& p : outbox_) out.send(p);
  }

  void on_internal() override {
    outbox_.clear();
    passivate();
  }

  void on_external() override {
    for (const auto& p : in.bag()) {
      const auto* req = std::get_if<AmfRequest>(&p.payload);
      if (req == nullptr) {
        fault("unexpected payload from " + p.source);
      }
      AmfResponse verdict{req->ue_id, req->ap_id,
                          amf_check(req->ue_id, policy_)};
      PhysicalPacket reply;
      reply.payload = verdict;
      reply.size_bits = xh_.control_bits;
      reply.tx_power_dbm = xh_.tx_power_dbm;
      reply.carrier_hz = xh_.carrier_hz;
      reply.source = node_id_;
      reply.destination = req->ap_id;
      outbox_.push_back(std::move(reply));
    }
    if (!outbox_.empty()) schedule_in(devs::SimTime::zero());
  }

  devs::Port<PhysicalPacket>& in;
  devs::Port<PhysicalPacket>& out;

 private:
  std::string node_id_;
  AmfPolicy policy_;
  CrosshaulParams xh_;
  std::vector<PhysicalPacket> outbox_;
};

}  // namespace fogsim::net
