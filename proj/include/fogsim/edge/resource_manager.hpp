#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/edge/commands.hpp"
#include "fogsim/edge/dispatch.hpp"
#include "fogsim/edge/dvfs.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/telemetry/records.hpp"

namespace fogsim::edge {

// Free session slots a unit can still host for a given per-session share.
inline int free_slots_for(double committed_utilization, double share) {
  if (!(share > 0.0)) return 0;
  const double free = 1.0 - committed_utilization;
  if (free <= 0.0) return 0;
  return static_cast<int>((free + kShareEpsilon) / share);
}

// Controls every processing unit of one EDC: dispatches sessions with the
// configured strategy, powers units on and off per the hardware policy,
// forwards data-path requests to the hosting unit, and reports free slots
// plus instantaneous power for the SDN controller.
//
// Duplicate session requests (timeout resends) join the pending session and
// each receives its own response, so responses always balance requests.
class ResourceManager final : public devs::TimedAtomic {
 public:
  ResourceManager(std::string name, std::string edc_id, int pu_count,
                  std::map<std::string, double> service_shares,
                  std::unique_ptr<DispatchStrategy> strategy,
                  HardwarePolicy policy)
      : TimedAtomic(std::move(name)),
        create_in(add_input<net::CreateSessionRequest>("create_in")),
        remove_in(add_input<net::RemoveSessionRequest>("remove_in")),
        request_in(add_input<net::ServiceRequest>("request_in")),
        notice_in(add_input<PuNotice>("notice_in")),
        create_resp_out(
            add_output<net::CreateSessionResponse>("create_resp_out")),
        remove_resp_out(
            add_output<net::RemoveSessionResponse>("remove_resp_out")),
        svc_resp_out(add_output<net::ServiceResponse>("svc_resp_out")),
        report_out(add_output<net::EdcReport>("report_out")),
        telemetry(add_output<telemetry::Record>("telemetry")),
        edc_id_(std::move(edc_id)),
        service_shares_(std::move(service_shares)),
        strategy_(std::move(strategy)),
        policy_(policy) {
    if (pu_count < 1) throw ConfigError("EDC needs at least one PU");
    pus_.resize(pu_count);
    for (int i = 0; i < pu_count; ++i) {
      cmd_out_.push_back(&add_output<PuCommand>("cmd_out_" + std::to_string(i)));
      fwd_out_.push_back(
          &add_output<net::ServiceRequest>("fwd_out_" + std::to_string(i)));
      pus_[i].id = i;
    }
    if (policy_ == HardwarePolicy::always_on) {
      for (int i = 0; i < pu_count; ++i) send_command(i, {PuCommand::Kind::power_on, {}});
    }
    refresh_report();
    rearm();
  }

  void output() override {
    for (const auto& [pu, cmd] : out_cmds_) cmd_out_[pu]->send(cmd);
    for (const auto& [pu, req] : out_forwards_) fwd_out_[pu]->send(req);
    for (const auto& r : out_create_) create_resp_out.send(r);
    for (const auto& r : out_remove_) remove_resp_out.send(r);
    for (const auto& r : out_svc_) svc_resp_out.send(r);
    for (const auto& r : out_reports_) report_out.send(r);
    for (const auto& r : out_telemetry_) telemetry.send(r);
  }

  void on_internal() override {
    out_cmds_.clear();
    out_forwards_.clear();
    out_create_.clear();
    out_remove_.clear();
    out_svc_.clear();
    out_reports_.clear();
    out_telemetry_.clear();
    rearm();
  }

  void on_external() override {
    for (const auto& n : notice_in.bag()) handle_notice(n);
    for (const auto& r : create_in.bag()) handle_create(r);
    for (const auto& r : remove_in.bag()) handle_remove(r);
    for (const auto& r : request_in.bag()) handle_request(r);
    power_off_idle_units();
    refresh_report();
    rearm();
  }

  devs::Port<PuCommand>& cmd_port(int pu) { return *cmd_out_.at(pu); }
  devs::Port<net::ServiceRequest>& forward_port(int pu) {
    return *fwd_out_.at(pu);
  }

  devs::Port<net::CreateSessionRequest>& create_in;
  devs::Port<net::RemoveSessionRequest>& remove_in;
  devs::Port<net::ServiceRequest>& request_in;
  devs::Port<PuNotice>& notice_in;
  devs::Port<net::CreateSessionResponse>& create_resp_out;
  devs::Port<net::RemoveSessionResponse>& remove_resp_out;
  devs::Port<net::ServiceResponse>& svc_resp_out;
  devs::Port<net::EdcReport>& report_out;
  devs::Port<telemetry::Record>& telemetry;

 private:
  struct PuState {
    int id = 0;
    PuStatus status = PuStatus::off;
    double committed = 0.0;
    int outstanding_cmds = 0;
    int pending_power_on = 0;  // queued wake-ups not yet confirmed
    double power_w = 0.0;
  };
  struct SessionEntry {
    SessionRef ref;
    int pu = -1;
    SessionState state = SessionState::requested;
    int waiting_create = 0;
    int waiting_remove = 0;
    PuStatus status_at_dispatch = PuStatus::off;
  };

  void send_command(int pu, PuCommand cmd) {
    switch (cmd.kind) {
      case PuCommand::Kind::power_on:
        pus_[pu].status = PuStatus::powering_on;
        ++pus_[pu].pending_power_on;
        break;
      case PuCommand::Kind::power_off:
        pus_[pu].status = PuStatus::powering_off;
        break;
      default:
        break;
    }
    ++pus_[pu].outstanding_cmds;
    out_cmds_.emplace_back(pu, std::move(cmd));
  }

  void session_event(const std::string& kind, const SessionEntry& s) {
    out_telemetry_.push_back(telemetry::SessionEvent{
        kind, s.ref.ue_id, s.ref.service_id, edc_id_, s.pu,
        to_string(s.status_at_dispatch)});
  }

  void handle_notice(const PuNotice& n) {
    auto& pu = pus_.at(n.pu);
    pu.power_w = n.power_w;
    switch (n.kind) {
      case PuNotice::Kind::powered_on:
        pu.status = PuStatus::on;
        --pu.outstanding_cmds;
        --pu.pending_power_on;
        break;
      case PuNotice::Kind::powered_off:
        // a wake-up may already sit in the unit's queue; keep the view ahead
        pu.status =
            pu.pending_power_on > 0 ? PuStatus::powering_on : PuStatus::off;
        --pu.outstanding_cmds;
        break;
      case PuNotice::Kind::session_started: {
        --pu.outstanding_cmds;
        pu.status = PuStatus::on;
        auto it = sessions_.find(n.session.key());
        if (it == sessions_.end()) fault("notice for unknown session");
        it->second.state = SessionState::active;
        session_event("active", it->second);
        for (; it->second.waiting_create > 0; --it->second.waiting_create) {
          out_create_.push_back(net::CreateSessionResponse{
              n.session.ue_id, n.session.service_id, edc_id_, true});
          session_event("granted", it->second);
        }
        break;
      }
      case PuNotice::Kind::session_stopped: {
        --pu.outstanding_cmds;
        pu.status = PuStatus::on;
        auto it = sessions_.find(n.session.key());
        if (it == sessions_.end()) fault("notice for unknown session");
        pu.committed -= it->second.ref.share;
        if (pu.committed < kShareEpsilon) pu.committed = 0.0;
        for (; it->second.waiting_remove > 0; --it->second.waiting_remove) {
          out_remove_.push_back(net::RemoveSessionResponse{
              n.session.ue_id, n.session.service_id, edc_id_, true});
        }
        session_event("closed", it->second);
        sessions_.erase(it);
        break;
      }
      case PuNotice::Kind::power_update:
        break;
    }
  }

  void handle_create(const net::CreateSessionRequest& req) {
    SessionEntry probe;
    probe.ref = {req.ue_id, req.service_id, 0.0};
    session_event("request", probe);

    auto it = sessions_.find({req.ue_id, req.service_id});
    if (it != sessions_.end()) {
      switch (it->second.state) {
        case SessionState::requested:  // timeout resend, join the wait
          ++it->second.waiting_create;
          return;
        case SessionState::active:  // duplicate after grant
          out_create_.push_back(net::CreateSessionResponse{
              req.ue_id, req.service_id, edc_id_, true});
          session_event("granted", it->second);
          return;
        case SessionState::closing:  // recreate races the teardown
          out_create_.push_back(net::CreateSessionResponse{
              req.ue_id, req.service_id, edc_id_, false});
          session_event("rejected", it->second);
          return;
      }
    }

    auto share_it = service_shares_.find(req.service_id);
    if (share_it == service_shares_.end()) {
      out_telemetry_.push_back(telemetry::Warning{
          full_path(), "unknown service " + req.service_id});
      out_create_.push_back(net::CreateSessionResponse{
          req.ue_id, req.service_id, edc_id_, false});
      session_event("rejected", probe);
      return;
    }
    const double share = share_it->second;

    std::vector<PuSnapshot> snapshots;
    snapshots.reserve(pus_.size());
    for (const auto& pu : pus_) {
      snapshots.push_back({pu.id, pu.status, pu.committed});
    }
    const auto choice = strategy_->pick(snapshots, share);
    if (!choice) {
      out_create_.push_back(net::CreateSessionResponse{
          req.ue_id, req.service_id, edc_id_, false});
      session_event("rejected", probe);
      return;
    }

    SessionEntry entry;
    entry.ref = {req.ue_id, req.service_id, share};
    entry.pu = *choice;
    entry.state = SessionState::requested;
    entry.waiting_create = 1;
    entry.status_at_dispatch = pus_[*choice].status;
    pus_[*choice].committed += share;
    if ((pus_[*choice].status == PuStatus::off ||
         pus_[*choice].status == PuStatus::powering_off) &&
        pus_[*choice].pending_power_on == 0) {
      send_command(*choice, {PuCommand::Kind::power_on, {}});
    }
    send_command(*choice, {PuCommand::Kind::start_session, entry.ref});
    sessions_[entry.ref.key()] = entry;
    session_event("dispatched", entry);
  }

  void handle_remove(const net::RemoveSessionRequest& req) {
    auto it = sessions_.find({req.ue_id, req.service_id});
    SessionEntry probe;
    probe.ref = {req.ue_id, req.service_id, 0.0};
    session_event("close_request", it != sessions_.end() ? it->second : probe);
    if (it == sessions_.end() || it->second.state == SessionState::requested) {
      out_remove_.push_back(net::RemoveSessionResponse{
          req.ue_id, req.service_id, edc_id_, false});
      return;
    }
    if (it->second.state == SessionState::closing) {
      ++it->second.waiting_remove;  // timeout resend
      return;
    }
    it->second.state = SessionState::closing;
    it->second.waiting_remove = 1;
    send_command(it->second.pu,
                 {PuCommand::Kind::stop_session, it->second.ref});
  }

  void handle_request(const net::ServiceRequest& req) {
    auto it = sessions_.find({req.ue_id, req.service_id});
    if (it == sessions_.end()) {
      out_svc_.push_back(net::ServiceResponse{req.ue_id, req.service_id,
                                              req.seq, edc_id_, false});
      return;
    }
    out_forwards_.emplace_back(it->second.pu, req);
  }

  void power_off_idle_units() {
    if (policy_ != HardwarePolicy::power_off_idle) return;
    for (auto& pu : pus_) {
      if (pu.status == PuStatus::on && pu.committed == 0.0 &&
          pu.outstanding_cmds == 0) {
        send_command(pu.id, {PuCommand::Kind::power_off, {}});
      }
    }
  }

  void refresh_report() {
    net::EdcReport report;
    report.edc_id = edc_id_;
    double power = 0.0;
    for (const auto& pu : pus_) power += pu.power_w;
    report.power_w = power;
    for (const auto& [service, share] : service_shares_) {
      int slots = 0;
      for (const auto& pu : pus_) slots += free_slots_for(pu.committed, share);
      report.free_slots.emplace_back(service, slots);
    }
    if (!last_report_ ||
        last_report_->free_slots != report.free_slots ||
        last_report_->power_w != report.power_w) {
      out_reports_.push_back(report);
      last_report_ = report;
    }
  }

  bool outbox_empty() const {
    return out_cmds_.empty() && out_forwards_.empty() && out_create_.empty() &&
           out_remove_.empty() && out_svc_.empty() && out_reports_.empty() &&
           out_telemetry_.empty();
  }

  void rearm() {
    if (outbox_empty()) {
      passivate();
    } else {
      schedule_in(devs::SimTime::zero());
    }
  }

  std::string edc_id_;
  std::map<std::string, double> service_shares_;
  std::unique_ptr<DispatchStrategy> strategy_;
  HardwarePolicy policy_;

  std::vector<PuState> pus_;
  std::vector<devs::Port<PuCommand>*> cmd_out_;
  std::vector<devs::Port<net::ServiceRequest>*> fwd_out_;
  std::map<std::pair<std::string, std::string>, SessionEntry> sessions_;
  std::optional<net::EdcReport> last_report_;

  std::vector<std::pair<int, PuCommand>> out_cmds_;
  std::vector<std::pair<int, net::ServiceRequest>> out_forwards_;
  std::vector<net::CreateSessionResponse> out_create_;
  std::vector<net::RemoveSessionResponse> out_remove_;
  std::vector<net::ServiceResponse> out_svc_;
  std::vector<net::EdcReport> out_reports_;
  std::vector<telemetry::Record> out_telemetry_;
};

}  // namespace fogsim::edge
