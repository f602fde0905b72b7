#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/radio_params.hpp"
#include "fogsim/telemetry/records.hpp"
#include "fogsim/ue/uplink.hpp"

namespace fogsim::ue {

// Device-side access controller and radio antenna. Collects PSS beacons to
// rank reachable APs, runs the access sequence through the AMF, reports
// link quality periodically, follows handover commands, and adapts the
// uplink to the bandwidth and MCS decided by the serving AP. Uplink traffic
// with no usable grant waits in a queue instead of being dropped.
class UeController final : public devs::TimedAtomic {
 public:
  UeController(std::string name, std::string ue_id, net::RadioParams radio,
               const std::vector<std::string>& service_ids)
      : TimedAtomic(std::move(name)),
        radio_in(add_input<net::PhysicalPacket>("radio_in")),
        service_in(add_input<UplinkMessage>("service_in")),
        pucch_out(add_output<net::PhysicalPacket>("pucch_out")),
        pusch_out(add_output<net::PhysicalPacket>("pusch_out")),
        status_out(add_output<AccessStatus>("status_out")),
        telemetry(add_output<telemetry::Record>("telemetry")),
        ue_id_(std::move(ue_id)),
        radio_(std::move(radio)) {
    for (const auto& svc : service_ids) {
      to_service_[svc] = &add_output<net::Payload>("to_" + svc);
    }
    discovery_end_ = now() + devs::SimTime(radio_.discovery_window_s);
    rearm();
  }

  void output() override {
    for (const auto& p : out_pucch_) pucch_out.send(p);
    for (const auto& p : out_pusch_) pusch_out.send(p);
    for (const auto& s : out_status_) status_out.send(s);
    for (const auto& r : out_telemetry_) telemetry.send(r);
    for (const auto& [svc, payload] : out_service_) {
      to_service_.at(svc)->send(payload);
    }
  }

  void on_internal() override {
    out_pucch_.clear();
    out_pusch_.clear();
    out_status_.clear();
    out_telemetry_.clear();
    out_service_.clear();
    if (due(discovery_end_) && state_ == AccessState::discovering) {
      discovery_end_.reset();
      finish_discovery();
    }
    if (due(backoff_end_)) {
      backoff_end_.reset();
      state_ = AccessState::discovering;
      discovery_end_ = now() + devs::SimTime(radio_.discovery_window_s);
    }
    if (due(request_deadline_) && state_ == AccessState::requesting) {
      request_deadline_.reset();
      state_ = AccessState::discovering;  // retry from discovery
      discovery_end_ = now() + devs::SimTime(radio_.discovery_window_s);
    }
    if (due(next_rrc_)) {
      if (state_ == AccessState::connected) {
        send_rrc();
        next_rrc_ = now() + devs::SimTime(radio_.rrc_period_s);
      } else {
        next_rrc_.reset();
      }
    }
    rearm();
  }

  void on_external() override {
    for (const auto& p : radio_in.bag()) handle_radio(p);
    for (const auto& m : service_in.bag()) send_uplink(m);
    rearm();
  }

  const std::string& serving_ap() const { return serving_; }
  bool connected() const { return state_ == AccessState::connected; }
  double granted_bandwidth_hz() const { return bandwidth_hz_; }
  double uplink_efficiency() const { return ul_efficiency_; }

  devs::Port<net::PhysicalPacket>& radio_in;
  devs::Port<UplinkMessage>& service_in;
  devs::Port<net::PhysicalPacket>& pucch_out;
  devs::Port<net::PhysicalPacket>& pusch_out;
  devs::Port<AccessStatus>& status_out;
  devs::Port<telemetry::Record>& telemetry;

 private:
  enum class AccessState {
    disconnected,
    discovering,
    requesting,
    connected,
    handing_over,
  };

  bool due(const std::optional<devs::SimTime>& deadline) const {
    return deadline && *deadline <= now();
  }

  net::SignalReport measurement_report() const {
    net::SignalReport report(measurements_.begin(), measurements_.end());
    return report;
  }

  void finish_discovery() {
    if (measurements_.empty()) {  // nothing heard yet, keep listening
      discovery_end_ = now() + devs::SimTime(radio_.discovery_window_s);
      return;
    }
    std::string best;
    double best_rx = -std::numeric_limits<double>::infinity();
    for (const auto& [ap, rx] : measurements_) {
      if (rx > best_rx) {
        best = ap;
        best_rx = rx;
      }
    }
    requested_ = best;
    state_ = AccessState::requesting;
    send_control(best, net::AccessRequest{ue_id_, measurement_report()});
    request_deadline_ = now() + devs::SimTime(radio_.request_timeout_s);
  }

  void handle_radio(const net::PhysicalPacket& p) {
    if (const auto* m = std::get_if<net::PssBeacon>(&p.payload)) {
      measurements_[m->ap_id] = p.rx_power_dbm;
    } else if (const auto* m = std::get_if<net::AccessResponse>(&p.payload)) {
      handle_access_response(*m);
    } else if (const auto* m = std::get_if<net::RadioConfig>(&p.payload)) {
      bandwidth_hz_ = m->bandwidth_hz;
      ul_efficiency_ = m->ul_efficiency_bps_hz;
      flush_stalled();
    } else if (const auto* m = std::get_if<net::HandoverCommand>(&p.payload)) {
      handle_handover(*m);
    } else if (const auto* m = std::get_if<net::DisconnectResponse>(&p.payload)) {
      (void)m;
      state_ = AccessState::disconnected;
      serving_.clear();
      next_rrc_.reset();
      out_status_.push_back(AccessStatus{false, ""});
    } else if (const auto* m = std::get_if<net::CreateSessionResponse>(&p.payload)) {
      deliver(m->service_id, p.payload);
    } else if (const auto* m = std::get_if<net::RemoveSessionResponse>(&p.payload)) {
      deliver(m->service_id, p.payload);
    } else if (const auto* m = std::get_if<net::ServiceResponse>(&p.payload)) {
      deliver(m->service_id, p.payload);
    } else {
      fault("unexpected radio payload from " + p.source);
    }
  }

  void handle_access_response(const net::AccessResponse& m) {
    if (state_ != AccessState::requesting || m.ap_id != requested_) {
      out_telemetry_.push_back(telemetry::Warning{
          full_path(), "ignoring access response from " + m.ap_id});
      return;
    }
    request_deadline_.reset();
    if (m.granted) {
      state_ = AccessState::connected;
      serving_ = m.ap_id;
      next_rrc_ = now() + devs::SimTime(radio_.rrc_period_s);
      out_status_.push_back(AccessStatus{true, serving_});
      flush_stalled();
    } else {
      state_ = AccessState::disconnected;
      backoff_end_ = now() + devs::SimTime(radio_.deny_backoff_s);
    }
  }

  void handle_handover(const net::HandoverCommand& m) {
    if (state_ != AccessState::connected || m.source_ap != serving_) {
      out_telemetry_.push_back(telemetry::Warning{
          full_path(), "ignoring handover command from " + m.source_ap});
      return;
    }
    state_ = AccessState::handing_over;
    const std::string prev = serving_;
    serving_ = m.target_ap;
    send_control(serving_, net::HandoverComplete{ue_id_, prev});
    // sessions survive; the target's radio grant arrives right behind
    state_ = AccessState::connected;
  }

  void send_rrc() {
    send_control(serving_, net::RrcReport{ue_id_, measurement_report()});
  }

  template <typename Msg>
  void send_control(const std::string& ap, const Msg& m) {
    net::PhysicalPacket p;
    p.payload = m;
    p.size_bits = radio_.control_bits;
    p.tx_power_dbm = radio_.ue_eirp_dbm();
    p.bandwidth_hz = radio_.channel_bandwidth_hz;
    p.spectral_efficiency_bps_hz =
        radio_.uplink_table->lowest().efficiency_bps_hz;
    p.carrier_hz = radio_.carrier_hz;
    p.source = ue_id_;
    p.destination = ap;
    out_pucch_.push_back(std::move(p));
  }

  void send_uplink(const UplinkMessage& m) {
    if (state_ != AccessState::connected || bandwidth_hz_ <= 0.0 ||
        ul_efficiency_ <= 0.0) {
      stalled_.push_back(m);  // queued, not dropped
      return;
    }
    net::PhysicalPacket p;
    p.payload = m.payload;
    p.size_bits = m.bits;
    p.tx_power_dbm = radio_.ue_eirp_dbm();
    p.bandwidth_hz = bandwidth_hz_;
    p.spectral_efficiency_bps_hz = ul_efficiency_;
    p.carrier_hz = radio_.carrier_hz;
    p.source = ue_id_;
    p.destination = serving_;
    out_pusch_.push_back(std::move(p));
  }

  void flush_stalled() {
    if (stalled_.empty()) return;
    auto waiting = std::move(stalled_);
    stalled_.clear();
    for (const auto& m : waiting) send_uplink(m);
  }

  void deliver(const std::string& service, const net::Payload& payload) {
    if (to_service_.find(service) == to_service_.end()) {
      out_telemetry_.push_back(telemetry::Warning{
          full_path(), "response for unknown service " + service + "; dropped"});
      return;
    }
    out_service_.emplace_back(service, payload);
  }

  bool outbox_empty() const {
    return out_pucch_.empty() && out_pusch_.empty() && out_status_.empty() &&
           out_telemetry_.empty() && out_service_.empty();
  }

  void rearm() {
    devs::SimTime next = devs::SimTime::infinity();
    if (!outbox_empty()) {
      next = now();
    } else {
      for (const auto& d :
           {discovery_end_, backoff_end_, request_deadline_, next_rrc_}) {
        if (d && *d < next) next = *d;
      }
    }
    if (next.is_infinite()) {
      passivate();
    } else {
      schedule_at(next);
    }
  }

  std::string ue_id_;
  net::RadioParams radio_;

  AccessState state_ = AccessState::discovering;
  std::map<std::string, double> measurements_;  // ap -> latest rx power dBm
  std::string serving_;
  std::string requested_;
  double bandwidth_hz_ = 0.0;
  double ul_efficiency_ = 0.0;
  std::optional<devs::SimTime> discovery_end_;
  std::optional<devs::SimTime> backoff_end_;
  std::optional<devs::SimTime> request_deadline_;
  std::optional<devs::SimTime> next_rrc_;
  std::vector<UplinkMessage> stalled_;
  std::map<std::string, devs::Port<net::Payload>*> to_service_;

  std::vector<net::PhysicalPacket> out_pucch_;
  std::vector<net::PhysicalPacket> out_pusch_;
  std::vector<AccessStatus> out_status_;
  std::vector<telemetry::Record> out_telemetry_;
  std::vector<std::pair<std::string, net::Payload>> out_service_;
};

}  // namespace fogsim::ue
