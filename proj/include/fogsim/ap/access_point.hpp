#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/coupled.hpp"
#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/pipes.hpp"
#include "fogsim/net/radio_params.hpp"
#include "fogsim/phy/bandwidth.hpp"
#include "fogsim/phy/delay.hpp"
#include "fogsim/phy/link.hpp"
#include "fogsim/telemetry/records.hpp"

namespace fogsim::ap {

// Periodic PSS broadcast carrying the AP id and location, so devices can
// rank reachable APs by received power. Broadcasts continue with or without
// listeners.
class Signaling final : public devs::TimedAtomic {
 public:
  Signaling(std::string name, std::string ap_id, net::NodePosition position,
            net::RadioParams radio)
      : TimedAtomic(std::move(name)),
        pbch_out(add_output<net::PhysicalPacket>("pbch_out")),
        ap_id_(std::move(ap_id)),
        position_(position),
        radio_(std::move(radio)) {
    schedule_in(devs::SimTime(radio_.pss_period_s));
  }

  void output() override {
    net::PhysicalPacket p;
    p.payload = net::PssBeacon{ap_id_, position_.x_m, position_.y_m};
    p.size_bits = radio_.control_bits;
    p.tx_power_dbm = radio_.ap_eirp_dbm();
    p.bandwidth_hz = radio_.channel_bandwidth_hz;
    p.spectral_efficiency_bps_hz =
        radio_.downlink_table->lowest().efficiency_bps_hz;
    p.carrier_hz = radio_.carrier_hz;
    p.source = ap_id_;
    p.destination = phy::kBroadcast;
    pbch_out.send(p);
  }

  void on_internal() override {
    schedule_in(devs::SimTime(radio_.pss_period_s));
  }
  void on_external() override {}

  devs::Port<net::PhysicalPacket>& pbch_out;

 private:
  std::string ap_id_;
  net::NodePosition position_;
  net::RadioParams radio_;
};

// Access control, handover management, per-device radio adaptation and
// session transport of one AP.
//
// The antenna bookkeeping follows the radio model: every uplink arrival is a
// receive-power measurement; the device reports downlink receive power in
// access requests and RRC reports. SNR is evaluated over each device's
// current bandwidth share, so admitting or releasing a device re-evaluates
// everyone's MCS as well as their share.
class ApController final : public devs::TimedAtomic {
 public:
  ApController(std::string name, std::string ap_id, net::NodePosition position,
               net::RadioParams radio, net::CrosshaulParams xh,
               std::shared_ptr<const phy::BandwidthShareStrategy> share_strategy)
      : TimedAtomic(std::move(name)),
        radio_in(add_input<net::PhysicalPacket>("radio_in")),
        xh_in(add_input<net::PhysicalPacket>("xh_in")),
        pdcch_out(add_output<net::PhysicalPacket>("pdcch_out")),
        pdsch_out(add_output<net::PhysicalPacket>("pdsch_out")),
        xh_out(add_output<net::PhysicalPacket>("xh_out")),
        telemetry(add_output<telemetry::Record>("telemetry")),
        ap_id_(std::move(ap_id)),
        position_(position),
        radio_(std::move(radio)),
        xh_(xh),
        share_strategy_(std::move(share_strategy)) {}

  void output() override {
    for (const auto& p : out_pdcch_) pdcch_out.send(p);
    for (const auto& p : out_pdsch_) pdsch_out.send(p);
    for (const auto& p : out_xh_) xh_out.send(p);
    for (const auto& r : out_telemetry_) telemetry.send(r);
  }

  void on_internal() override {
    out_pdcch_.clear();
    out_pdsch_.clear();
    out_xh_.clear();
    out_telemetry_.clear();
    passivate();
  }

  void on_external() override {
    for (const auto& p : radio_in.bag()) handle_radio(p);
    for (const auto& p : xh_in.bag()) handle_crosshaul(p);
    if (!out_pdcch_.empty() || !out_pdsch_.empty() || !out_xh_.empty() ||
        !out_telemetry_.empty()) {
      schedule_in(devs::SimTime::zero());
    }
  }

  const std::set<std::string>& connected() const { return connected_; }
  double share_of(const std::string& ue) const {
    auto it = links_.find(ue);
    return it == links_.end() ? 0.0 : it->second.bandwidth_hz;
  }

  devs::Port<net::PhysicalPacket>& radio_in;
  devs::Port<net::PhysicalPacket>& xh_in;
  devs::Port<net::PhysicalPacket>& pdcch_out;
  devs::Port<net::PhysicalPacket>& pdsch_out;
  devs::Port<net::PhysicalPacket>& xh_out;
  devs::Port<telemetry::Record>& telemetry;

 private:
  struct UeLink {
    double bandwidth_hz = 0.0;
    double ul_rx_dbm = 0.0;  // measured here from uplink arrivals
    double dl_rx_dbm = 0.0;  // reported by the device
    const phy::McsEntry* ul_mcs = nullptr;
    const phy::McsEntry* dl_mcs = nullptr;
  };

  void handle_radio(const net::PhysicalPacket& p) {
    if (const auto* m = std::get_if<net::AccessRequest>(&p.payload)) {
      handle_access(*m, p.rx_power_dbm);
    } else if (const auto* m = std::get_if<net::RrcReport>(&p.payload)) {
      handle_rrc(*m, p.rx_power_dbm);
    } else if (const auto* m = std::get_if<net::HandoverComplete>(&p.payload)) {
      handle_handover_complete(*m, p.rx_power_dbm);
    } else if (const auto* m = std::get_if<net::DisconnectRequest>(&p.payload)) {
      handle_disconnect(*m);
    } else if (const auto* m = std::get_if<net::CreateSessionRequest>(&p.payload)) {
      route_create(*m, p.size_bits);
    } else if (const auto* m = std::get_if<net::RemoveSessionRequest>(&p.payload)) {
      net::RemoveSessionRequest stamped = *m;
      stamped.via_ap = ap_id_;
      send_xh(stamped.edc_id, stamped, p.size_bits);
    } else if (const auto* m = std::get_if<net::ServiceRequest>(&p.payload)) {
      net::ServiceRequest stamped = *m;
      stamped.via_ap = ap_id_;
      send_xh(stamped.edc_id, stamped, p.size_bits);
    } else {
      fault("unexpected radio payload from " + p.source);
    }
  }

  void handle_crosshaul(const net::PhysicalPacket& p) {
    if (const auto* m = std::get_if<net::AmfResponse>(&p.payload)) {
      handle_amf_response(*m);
    } else if (const auto* m = std::get_if<net::SdnUpdate>(&p.payload)) {
      routes_.clear();
      for (const auto& [svc, edcs] : m->routes) routes_[svc] = edcs;
      flush_route_wait();
    } else if (const auto* m = std::get_if<net::HandoverRequest>(&p.payload)) {
      pending_handover_in_[m->ue_id] = *m;
      send_xh(m->source_ap,
              net::HandoverResponse{m->ue_id, m->source_ap, m->target_ap, true},
              xh_.control_bits);
    } else if (const auto* m = std::get_if<net::HandoverResponse>(&p.payload)) {
      handle_handover_response(*m);
    } else if (const auto* m = std::get_if<net::CreateSessionResponse>(&p.payload)) {
      downlink_or_forward(m->ue_id, *m, p.size_bits);
    } else if (const auto* m = std::get_if<net::RemoveSessionResponse>(&p.payload)) {
      downlink_or_forward(m->ue_id, *m, p.size_bits);
    } else if (const auto* m = std::get_if<net::ServiceResponse>(&p.payload)) {
      downlink_or_forward(m->ue_id, *m, p.size_bits);
    } else {
      fault("unexpected crosshaul payload from " + p.source);
    }
  }

  void handle_access(const net::AccessRequest& m, double rx_dbm) {
    if (connected_.count(m.ue_id) != 0) {  // duplicate: re-acknowledge
      send_pdcch(m.ue_id, net::AccessResponse{m.ue_id, ap_id_, true});
      return;
    }
    pending_access_[m.ue_id] = m.measurements;
    pending_access_rx_[m.ue_id] = rx_dbm;
    send_xh("amf", net::AmfRequest{m.ue_id, ap_id_}, xh_.control_bits);
  }

  void handle_amf_response(const net::AmfResponse& m) {
    auto pending = pending_access_.find(m.ue_id);
    if (pending == pending_access_.end()) return;  // stale verdict
    if (m.granted) {
      admit(m.ue_id, pending->second, pending_access_rx_.at(m.ue_id));
      send_pdcch(m.ue_id, net::AccessResponse{m.ue_id, ap_id_, true});
    } else {
      send_pdcch(m.ue_id, net::AccessResponse{m.ue_id, ap_id_, false});
      out_telemetry_.push_back(telemetry::AccessEvent{"denied", m.ue_id, ap_id_});
    }
    pending_access_.erase(m.ue_id);
    pending_access_rx_.erase(m.ue_id);
  }

  void handle_rrc(const net::RrcReport& m, double rx_dbm) {
    auto link = links_.find(m.ue_id);
    if (link == links_.end()) return;  // release raced the report
    link->second.ul_rx_dbm = rx_dbm;
    double serving_rx = link->second.dl_rx_dbm;
    for (const auto& [ap, rx] : m.measurements) {
      if (ap == ap_id_) serving_rx = rx;
    }
    link->second.dl_rx_dbm = serving_rx;
    update_link_mcs(m.ue_id, link->second);

    if (pending_handover_out_.count(m.ue_id) != 0) return;
    std::string best_ap = ap_id_;
    double best_rx = serving_rx;
    for (const auto& [ap, rx] : m.measurements) {
      if (rx > best_rx || (rx == best_rx && ap < best_ap)) {
        best_ap = ap;
        best_rx = rx;
      }
    }
    if (best_ap != ap_id_ &&
        best_rx > serving_rx + radio_.handover_hysteresis_db) {
      pending_handover_out_[m.ue_id] = best_ap;
      send_xh(best_ap,
              net::HandoverRequest{m.ue_id, ap_id_, best_ap, m.measurements},
              xh_.control_bits);
    }
  }

  void handle_handover_response(const net::HandoverResponse& m) {
    auto pending = pending_handover_out_.find(m.ue_id);
    if (pending == pending_handover_out_.end()) return;
    const std::string target = pending->second;
    pending_handover_out_.erase(pending);
    if (!m.accepted) return;  // device stays on this AP
    // command first, then release: the command still uses this AP's radio
    send_pdcch(m.ue_id, net::HandoverCommand{m.ue_id, ap_id_, target});
    forwarding_[m.ue_id] = target;
    release(m.ue_id);
    out_telemetry_.push_back(telemetry::AccessEvent{"handover", m.ue_id, target});
  }

  void handle_handover_complete(const net::HandoverComplete& m, double rx_dbm) {
    auto pending = pending_handover_in_.find(m.ue_id);
    if (pending == pending_handover_in_.end()) {
      fault("handover completion without reservation for " + m.ue_id);
    }
    std::optional<double> dl_rx;
    for (const auto& [ap, rx] : pending->second.measurements) {
      if (ap == ap_id_) dl_rx = rx;
    }
    if (!dl_rx) {
      // a handover targets this AP because its signal won the report
      fault("handover reservation without a measurement of " + ap_id_);
    }
    net::SignalReport seed{{ap_id_, *dl_rx}};
    pending_handover_in_.erase(pending);
    forwarding_.erase(m.ue_id);
    admit(m.ue_id, seed, rx_dbm);
  }

  void handle_disconnect(const net::DisconnectRequest& m) {
    if (connected_.count(m.ue_id) == 0) return;
    send_pdcch(m.ue_id, net::DisconnectResponse{m.ue_id, ap_id_});
    release(m.ue_id);
  }

  void admit(const std::string& ue, const net::SignalReport& measurements,
             double ul_rx_dbm) {
    UeLink link;
    link.ul_rx_dbm = ul_rx_dbm;
    bool have_dl = false;
    for (const auto& [ap, rx] : measurements) {
      if (ap == ap_id_) {
        link.dl_rx_dbm = rx;
        have_dl = true;
      }
    }
    if (!have_dl) fault("admission without a measurement of " + ap_id_);
    connected_.insert(ue);
    links_[ue] = link;
    out_telemetry_.push_back(telemetry::AccessEvent{"connected", ue, ap_id_});
    reassign_bandwidth();
  }

  void release(const std::string& ue) {
    connected_.erase(ue);
    links_.erase(ue);
    out_telemetry_.push_back(telemetry::AccessEvent{"disconnected", ue, ap_id_});
    out_telemetry_.push_back(telemetry::BandwidthSample{ap_id_, ue, 0.0, 0.0, 0.0});
    reassign_bandwidth();
  }

  // Even-share by default: every membership change updates every share, and
  // through the noise bandwidth every MCS as well.
  void reassign_bandwidth() {
    auto shares = share_strategy_->share(radio_.channel_bandwidth_hz, connected_);
    for (auto& [ue, link] : links_) {
      const double share = shares.at(ue);
      const bool share_changed = share != link.bandwidth_hz;
      link.bandwidth_hz = share;
      const bool mcs_changed = update_link_mcs(ue, link);
      if (share_changed || mcs_changed) {
        out_telemetry_.push_back(telemetry::BandwidthSample{
            ap_id_, ue, share, link.dl_mcs->efficiency_bps_hz,
            phy::bit_rate_bps(share, link.dl_mcs->efficiency_bps_hz)});
        send_pdcch(ue, net::RadioConfig{ue, ap_id_, share, link.ul_mcs->index,
                                        link.ul_mcs->name,
                                        link.ul_mcs->efficiency_bps_hz});
      }
    }
  }

  // Returns true when either direction changed entry.
  bool update_link_mcs(const std::string& ue, UeLink& link) {
    const double ul_snr = phy::snr_from_rx_dbm(
        link.ul_rx_dbm, radio_.ap_gain_db, radio_.ap_noise_temp_k,
        link.bandwidth_hz);
    const double dl_snr = phy::snr_from_rx_dbm(
        link.dl_rx_dbm, radio_.ue_gain_db, radio_.ue_noise_temp_k,
        link.bandwidth_hz);
    const auto* ul = &radio_.uplink_table->select(ul_snr);
    const auto* dl = &radio_.downlink_table->select(dl_snr);
    bool changed = false;
    if (ul != link.ul_mcs) {
      link.ul_mcs = ul;
      changed = true;
      out_telemetry_.push_back(telemetry::McsSample{
          ap_id_, ue, "ul", ul->index, ul->name, ul->efficiency_bps_hz, ul_snr});
      send_pdcch(ue, net::RadioConfig{ue, ap_id_, link.bandwidth_hz, ul->index,
                                      ul->name, ul->efficiency_bps_hz});
    }
    if (dl != link.dl_mcs) {
      link.dl_mcs = dl;
      changed = true;
      out_telemetry_.push_back(telemetry::McsSample{
          ap_id_, ue, "dl", dl->index, dl->name, dl->efficiency_bps_hz, dl_snr});
    }
    return changed;
  }

  void route_create(const net::CreateSessionRequest& m, double bits) {
    net::CreateSessionRequest stamped = m;
    stamped.via_ap = ap_id_;
    auto route = routes_.find(m.service_id);
    if (route == routes_.end() || route->second.empty()) {
      // no table entry yet; the SDN pushes updates, so park the message
      route_wait_.emplace_back(stamped, bits);
      out_telemetry_.push_back(telemetry::Warning{
          full_path(), "no route for service " + m.service_id + "; queued"});
      return;
    }
    send_xh(route->second.front(), stamped, bits);
  }

  void flush_route_wait() {
    auto waiting = std::move(route_wait_);
    route_wait_.clear();
    for (auto& [msg, bits] : waiting) route_create(msg, bits);
  }

  void downlink_or_forward(const std::string& ue, net::Payload payload,
                           double bits) {
    if (connected_.count(ue) != 0) {
      const auto& link = links_.at(ue);
      net::PhysicalPacket p;
      p.payload = std::move(payload);
      p.size_bits = bits;
      p.tx_power_dbm = radio_.ap_eirp_dbm();
      p.bandwidth_hz = link.bandwidth_hz;
      p.spectral_efficiency_bps_hz = link.dl_mcs->efficiency_bps_hz;
      p.carrier_hz = radio_.carrier_hz;
      p.source = ap_id_;
      p.destination = ue;
      out_pdsch_.push_back(std::move(p));
      return;
    }
    auto forward = forwarding_.find(ue);
    if (forward != forwarding_.end()) {  // late packet after handover
      net::PhysicalPacket p;
      p.payload = std::move(payload);
      p.size_bits = bits;
      p.tx_power_dbm = xh_.tx_power_dbm;
      p.carrier_hz = xh_.carrier_hz;
      p.source = ap_id_;
      p.destination = forward->second;
      out_xh_.push_back(std::move(p));
      return;
    }
    out_telemetry_.push_back(telemetry::Warning{
        full_path(), "dropping downlink for unknown device " + ue});
  }

  template <typename Msg>
  void send_pdcch(const std::string& ue, const Msg& m) {
    net::PhysicalPacket p;
    p.payload = m;
    p.size_bits = radio_.control_bits;
    p.tx_power_dbm = radio_.ap_eirp_dbm();
    p.bandwidth_hz = radio_.channel_bandwidth_hz;
    p.spectral_efficiency_bps_hz =
        radio_.downlink_table->lowest().efficiency_bps_hz;
    p.carrier_hz = radio_.carrier_hz;
    p.source = ap_id_;
    p.destination = ue;
    out_pdcch_.push_back(std::move(p));
  }

  template <typename Msg>
  void send_xh(const std::string& dest, const Msg& m, double bits) {
    net::PhysicalPacket p;
    p.payload = m;
    p.size_bits = bits;
    p.tx_power_dbm = xh_.tx_power_dbm;
    p.carrier_hz = xh_.carrier_hz;
    p.source = ap_id_;
    p.destination = dest;
    out_xh_.push_back(std::move(p));
  }

  std::string ap_id_;
  net::NodePosition position_;
  net::RadioParams radio_;
  net::CrosshaulParams xh_;
  std::shared_ptr<const phy::BandwidthShareStrategy> share_strategy_;

  std::set<std::string> connected_;
  std::map<std::string, UeLink> links_;
  std::map<std::string, net::SignalReport> pending_access_;
  std::map<std::string, double> pending_access_rx_;
  std::map<std::string, std::vector<std::string>> routes_;  // service -> EDCs
  std::vector<std::pair<net::CreateSessionRequest, double>> route_wait_;
  std::map<std::string, std::string> pending_handover_out_;  // ue -> target
  std::map<std::string, net::HandoverRequest> pending_handover_in_;
  std::map<std::string, std::string> forwarding_;  // ue -> current AP

  std::vector<net::PhysicalPacket> out_pdcch_;
  std::vector<net::PhysicalPacket> out_pdsch_;
  std::vector<net::PhysicalPacket> out_xh_;
  std::vector<telemetry::Record> out_telemetry_;
};

// AP coupled model: signaling block plus the controller.
class AccessPoint final : public devs::Coupled {
 public:
  AccessPoint(const std::string& id, net::NodePosition position,
              net::RadioParams radio, net::CrosshaulParams xh,
              std::shared_ptr<const phy::BandwidthShareStrategy> share_strategy)
      : Coupled(id),
        radio_in(add_input<net::PhysicalPacket>("radio_in")),
        xh_in(add_input<net::PhysicalPacket>("xh_in")),
        pbch_out(add_output<net::PhysicalPacket>("pbch_out")),
        pdcch_out(add_output<net::PhysicalPacket>("pdcch_out")),
        pdsch_out(add_output<net::PhysicalPacket>("pdsch_out")),
        xh_out(add_output<net::PhysicalPacket>("xh_out")),
        telemetry_out(add_output<telemetry::Record>("telemetry_out")) {
    auto& signaling = add<Signaling>("signaling", id, position, radio);
    auto& controller = add<ApController>("controller", id, position, radio, xh,
                                         std::move(share_strategy));
    couple(radio_in, controller.radio_in);
    couple(xh_in, controller.xh_in);
    couple(signaling.pbch_out, pbch_out);
    couple(controller.pdcch_out, pdcch_out);
    couple(controller.pdsch_out, pdsch_out);
    couple(controller.xh_out, xh_out);
    couple(controller.telemetry, telemetry_out);
    controller_ = &controller;
  }

  ApController& controller() { return *controller_; }

  devs::Port<net::PhysicalPacket>& radio_in;
  devs::Port<net::PhysicalPacket>& xh_in;
  devs::Port<net::PhysicalPacket>& pbch_out;
  devs::Port<net::PhysicalPacket>& pdcch_out;
  devs::Port<net::PhysicalPacket>& pdsch_out;
  devs::Port<net::PhysicalPacket>& xh_out;
  devs::Port<telemetry::Record>& telemetry_out;

 private:
  ApController* controller_ = nullptr;
};

}  // namespace fogsim::ap
