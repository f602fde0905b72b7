#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/pipes.hpp"

namespace fogsim::net {

// service -> ranked EDC ids, per access point.
using SdnRoutes = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Ranks EDCs for one AP: EDCs reporting free slots for the service come
// first, ordered by euclidean distance; saturated EDCs go last, same order.
inline std::vector<std::string> sdn_rank(
    const NodePosition& ap,
    const std::map<std::string, NodePosition>& edc_positions,
    const std::map<std::string, int>& free_slots) {
  struct Row {
    bool saturated;
    double dist;
    std::string id;
  };
  std::vector<Row> rows;
  for (const auto& [id, pos] : edc_positions) {
    auto it = free_slots.find(id);
    const int slots = it == free_slots.end() ? 1 : it->second;
    rows.push_back({slots <= 0, distance_between(ap, pos), id});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.saturated, a.dist, a.id) <
           std::tie(b.saturated, b.dist, b.id);
  });
  std::vector<std::string> ranked;
  ranked.reserve(rows.size());
  for (auto& r : rows) ranked.push_back(std::move(r.id));
  return ranked;
}

// Core-network SDN controller. Keeps the latest status report from every
// EDC and pushes re-ranked routing tables to the APs whenever a report
// changes some ranking. The initial table, with every EDC assumed free, is
// pushed at time zero.
class SdnController final : public devs::TimedAtomic {
 public:
  SdnController(std::string name, std::string node_id,
                std::map<std::string, NodePosition> ap_positions,
                std::map<std::string, NodePosition> edc_positions,
                std::vector<std::string> services, CrosshaulParams xh)
      : TimedAtomic(std::move(name)),
        in(add_input<PhysicalPacket>("in")),
        out(add_output<PhysicalPacket>("out")),
        node_id_(std::move(node_id)),
        ap_positions_(std::move(ap_positions)),
        edc_positions_(std::move(edc_positions)),
        services_(std::move(services)),
        xh_(xh) {
    for (const auto& [ap, pos] : ap_positions_) recompute(ap);
    for (const auto& [ap, pos] : ap_positions_) dirty_.push_back(ap);
    schedule_in(devs::SimTime::zero());
  }

  void output() override {
    for (const auto& ap : dirty_) {
      PhysicalPacket packet;
      packet.payload = SdnUpdate{ap, tables_.at(ap)};
      packet.size_bits = xh_.control_bits;
      packet.tx_power_dbm = xh_.tx_power_dbm;
      packet.carrier_hz = xh_.carrier_hz;
      packet.source = node_id_;
      packet.destination = ap;
      out.send(packet);
    }
  }

  void on_internal() override {
    dirty_.clear();
    passivate();
  }

  void on_external() override {
    for (const auto& p : in.bag()) {
      const auto* report = std::get_if<EdcReport>(&p.payload);
      if (report == nullptr) fault("unexpected payload from " + p.source);
      reports_[report->edc_id] = *report;
    }
    for (const auto& [ap, pos] : ap_positions_) {
      auto before = tables_[ap];
      recompute(ap);
      if (tables_[ap] != before &&
          std::find(dirty_.begin(), dirty_.end(), ap) == dirty_.end()) {
        dirty_.push_back(ap);
      }
    }
    if (!dirty_.empty()) schedule_in(devs::SimTime::zero());
  }

  const SdnRoutes& table_for(const std::string& ap) const {
    return tables_.at(ap);
  }

  devs::Port<PhysicalPacket>& in;
  devs::Port<PhysicalPacket>& out;

 private:
  void recompute(const std::string& ap) {
    SdnRoutes routes;
    for (const auto& service : services_) {
      std::map<std::string, int> slots;
      for (const auto& [edc, report] : reports_) {
        int n = 0;
        for (const auto& [svc, free] : report.free_slots) {
          if (svc == service) n = free;
        }
        slots[edc] = n;
      }
      routes.emplace_back(
          service, sdn_rank(ap_positions_.at(ap), edc_positions_, slots));
    }
    tables_[ap] = std::move(routes);
  }

  std::string node_id_;
  std::map<std::string, NodePosition> ap_positions_;
  std::map<std::string, NodePosition> edc_positions_;
  std::vector<std::string> services_;
  CrosshaulParams xh_;
  std::map<std::string, EdcReport> reports_;
  std::map<std::string, SdnRoutes> tables_;
  std::vector<std::string> dirty_;
};

}  // namespace fogsim::net
