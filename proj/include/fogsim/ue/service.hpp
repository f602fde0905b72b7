#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/telemetry/records.hpp"
#include "fogsim/ue/uplink.hpp"

namespace fogsim::ue {

struct ServiceConfig {
  std::string id;
  int session_messages = 20;
  double request_period_s = 1.0;
  double message_bits = 1e6;
  double create_timeout_s = 0.35;
  double idle_time_s = 1.0;
  double resource_share = 0.2;
  double control_bits = 1000.0;

  void validate() const {
    if (id.empty() || session_messages < 1 || !(request_period_s > 0.0) ||
        !(message_bits > 0.0) || !(create_timeout_s > 0.0) ||
        !(idle_time_s > 0.0) || !(resource_share > 0.0) ||
        resource_share > 1.0 || !(control_bits > 0.0)) {
      throw ConfigError("invalid service config '" + id + "'");
    }
  }
};

// One application's offloading loop. After idling, the device opens a
// session (resending the request on timeout), streams a fixed number of
// periodic requests, then voluntarily closes the session and idles again,
// repeating until the run ends. Every reply is paired with its request to
// produce a perceived-delay sample.
class Service final : public devs::TimedAtomic {
 public:
  Service(std::string name, std::string ue_id, ServiceConfig config)
      : TimedAtomic(std::move(name)),
        status_in(add_input<AccessStatus>("status_in")),
        response_in(add_input<net::Payload>("response_in")),
        uplink_out(add_output<UplinkMessage>("uplink_out")),
        telemetry(add_output<telemetry::Record>("telemetry")),
        ue_id_(std::move(ue_id)),
        cfg_(std::move(config)) {
    cfg_.validate();
  }

  void output() override {
    for (const auto& m : out_uplink_) uplink_out.send(m);
    for (const auto& r : out_telemetry_) telemetry.send(r);
  }

  void on_internal() override {
    out_uplink_.clear();
    out_telemetry_.clear();
    if (due(idle_end_)) {
      idle_end_.reset();
      start_create();
    }
    if (due(create_deadline_)) {  // unanswered: resend
      send_create();
      create_deadline_ = now() + devs::SimTime(cfg_.create_timeout_s);
    }
    if (due(next_request_)) {
      next_request_.reset();
      send_request();
    }
    rearm();
  }

  void on_external() override {
    for (const auto& s : status_in.bag()) {
      if (s.connected && phase_ == Phase::waiting_access) {
        phase_ = Phase::idle;
        idle_end_ = now() + devs::SimTime(cfg_.idle_time_s);
      }
    }
    for (const auto& payload : response_in.bag()) {
      if (const auto* m = std::get_if<net::CreateSessionResponse>(&payload)) {
        handle_create_response(*m);
      } else if (const auto* m =
                     std::get_if<net::RemoveSessionResponse>(&payload)) {
        handle_remove_response(*m);
      } else if (const auto* m = std::get_if<net::ServiceResponse>(&payload)) {
        handle_service_response(*m);
      } else {
        fault("unexpected payload for service " + cfg_.id);
      }
    }
    rearm();
  }

  std::uint64_t completed_cycles() const { return completed_cycles_; }

  devs::Port<AccessStatus>& status_in;
  devs::Port<net::Payload>& response_in;
  devs::Port<UplinkMessage>& uplink_out;
  devs::Port<telemetry::Record>& telemetry;

 private:
  enum class Phase { waiting_access, idle, creating, in_session, removing };

  bool due(const std::optional<devs::SimTime>& deadline) const {
    return deadline && *deadline <= now();
  }

  void start_create() {
    phase_ = Phase::creating;
    ++cycle_;
    first_create_sent_ = now();
    send_create();
    create_deadline_ = now() + devs::SimTime(cfg_.create_timeout_s);
  }

  void send_create() {
    out_uplink_.push_back(UplinkMessage{
        net::CreateSessionRequest{ue_id_, cfg_.id, ""}, cfg_.control_bits});
  }

  void send_request() {
    if (phase_ != Phase::in_session || sent_ >= cfg_.session_messages) return;
    ++seq_;
    ++sent_;
    outstanding_[seq_] = now();
    out_uplink_.push_back(UplinkMessage{
        net::ServiceRequest{ue_id_, cfg_.id, seq_, edc_, ""},
        cfg_.message_bits});
    if (sent_ < cfg_.session_messages) {
      next_request_ = now() + devs::SimTime(cfg_.request_period_s);
    }
  }

  void handle_create_response(const net::CreateSessionResponse& m) {
    if (phase_ != Phase::creating) return;  // grant burst from resends
    create_deadline_.reset();
    const double delay = (now() - *first_create_sent_).seconds();
    if (m.granted) {
      out_telemetry_.push_back(
          telemetry::DelaySample{ue_id_, cfg_.id, "create", cycle_, delay});
      phase_ = Phase::in_session;
      edc_ = m.edc_id;
      sent_ = 0;
      replied_ = 0;
      next_request_ = now() + devs::SimTime(cfg_.request_period_s);
    } else {
      out_telemetry_.push_back(telemetry::DelaySample{
          ue_id_, cfg_.id, "create_rejected", cycle_, delay});
      phase_ = Phase::idle;  // retry after another idle period
      idle_end_ = now() + devs::SimTime(cfg_.idle_time_s);
    }
  }

  void handle_service_response(const net::ServiceResponse& m) {
    auto it = outstanding_.find(m.seq);
    if (it == outstanding_.end()) {
      out_telemetry_.push_back(telemetry::Warning{
          full_path(), "reply for unknown request #" + std::to_string(m.seq)});
      return;
    }
    const double delay = (now() - it->second).seconds();
    outstanding_.erase(it);
    out_telemetry_.push_back(
        telemetry::DelaySample{ue_id_, cfg_.id, "request", m.seq, delay});
    if (!m.ok) {
      if (phase_ == Phase::in_session) {
        // the federation no longer knows the session: recreate it
        out_telemetry_.push_back(telemetry::Warning{
            full_path(), "session lost at " + m.edc_id + "; recreating"});
        phase_ = Phase::idle;
        next_request_.reset();
        idle_end_ = now() + devs::SimTime(cfg_.idle_time_s);
      }
      return;
    }
    if (phase_ == Phase::in_session) {
      ++replied_;
      if (replied_ == cfg_.session_messages) {
        phase_ = Phase::removing;
        next_request_.reset();
        remove_sent_ = now();
        out_uplink_.push_back(UplinkMessage{
            net::RemoveSessionRequest{ue_id_, cfg_.id, edc_, ""},
            cfg_.control_bits});
      }
    }
  }

  void handle_remove_response(const net::RemoveSessionResponse& m) {
    if (phase_ != Phase::removing) return;
    out_telemetry_.push_back(telemetry::DelaySample{
        ue_id_, cfg_.id, "remove", cycle_,
        (now() - *remove_sent_).seconds()});
    if (!m.ok) {
      out_telemetry_.push_back(telemetry::Warning{
          full_path(), "session removal refused by " + m.edc_id});
    }
    ++completed_cycles_;
    phase_ = Phase::idle;
    idle_end_ = now() + devs::SimTime(cfg_.idle_time_s);
  }

  void rearm() {
    devs::SimTime next = devs::SimTime::infinity();
    if (!out_uplink_.empty() || !out_telemetry_.empty()) {
      next = now();
    } else {
      for (const auto& d : {idle_end_, create_deadline_, next_request_}) {
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
  ServiceConfig cfg_;

  Phase phase_ = Phase::waiting_access;
  std::uint64_t cycle_ = 0;
  std::uint64_t seq_ = 0;
  int sent_ = 0;
  int replied_ = 0;
  std::string edc_;
  std::uint64_t completed_cycles_ = 0;
  std::optional<devs::SimTime> idle_end_;
  std::optional<devs::SimTime> create_deadline_;
  std::optional<devs::SimTime> next_request_;
  std::optional<devs::SimTime> first_create_sent_;
  std::optional<devs::SimTime> remove_sent_;
  std::map<std::uint64_t, devs::SimTime> outstanding_;

  std::vector<UplinkMessage> out_uplink_;
  std::vector<telemetry::Record> out_telemetry_;
};

}  // namespace fogsim::ue
