#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/timed.hpp"
#include "fogsim/edge/commands.hpp"
#include "fogsim/edge/dvfs.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/telemetry/records.hpp"

namespace fogsim::edge {

struct PuLatencies {
  double power_on_s = 1.0;
  double power_off_s = 1.0;
  double session_start_s = 0.2;
  double session_stop_s = 0.2;
  double request_s = 0.001;
};

// Instantaneous processing-unit power: zero when powered off, otherwise the
// power-curve value for the active DVFS configuration at this utilization.
inline double pu_power_w(PuStatus status, double utilization,
                         const DvfsConfig& cfg, const PowerModel& model) {
  if (status == PuStatus::off) return 0.0;
  return model.watts(utilization, cfg);
}

// Hardware unit hosting sessions. Power and session transitions run through
// a six-state machine; commands queue and execute one at a time, each taking
// its configured latency. Service requests are data-path traffic answered
// after the per-request processing latency, independent of the machine.
class ProcessingUnit final : public devs::TimedAtomic {
 public:
  ProcessingUnit(std::string name, std::string edc_id, int index,
                 std::vector<DvfsConfig> dvfs_table, PuLatencies latencies,
                 std::shared_ptr<const PowerModel> power_model)
      : TimedAtomic(std::move(name)),
        cmd_in(add_input<PuCommand>("cmd_in")),
        request_in(add_input<net::ServiceRequest>("request_in")),
        notice_out(add_output<PuNotice>("notice_out")),
        response_out(add_output<net::ServiceResponse>("response_out")),
        telemetry(add_output<telemetry::Record>("telemetry")),
        edc_id_(std::move(edc_id)),
        index_(index),
        dvfs_table_(std::move(dvfs_table)),
        latencies_(latencies),
        power_model_(std::move(power_model)) {
    validate_dvfs_table(dvfs_table_);
    sample_power();  // baseline off/0 W row
    rearm();
  }

  void output() override {
    for (const auto& n : notices_) notice_out.send(n);
    for (const auto& r : pending_telemetry_) telemetry.send(r);
    for (auto it = responses_.begin();
         it != responses_.end() && it->first == imminent_time(); ++it) {
      response_out.send(it->second);
    }
  }

  void on_internal() override {
    notices_.clear();
    pending_telemetry_.clear();
    auto due = responses_.begin();
    while (due != responses_.end() && due->first == now()) {
      due = responses_.erase(due);
    }
    if (op_ && op_->completes_at == now()) complete_op();
    try_start_next_op();
    sample_power();
    rearm();
  }

  void on_external() override {
    for (const auto& cmd : cmd_in.bag()) queue_.push_back(cmd);
    for (const auto& req : request_in.bag()) handle_request(req);
    try_start_next_op();
    sample_power();
    rearm();
  }

  PuStatus status() const { return status_; }
  double utilization() const { return utilization_; }
  const DvfsConfig& active_dvfs() const {
    return select_dvfs(dvfs_table_, utilization_);
  }
  double power_w() const {
    return pu_power_w(status_, utilization_, active_dvfs(), *power_model_);
  }
  std::size_t session_count() const { return sessions_.size(); }

  devs::Port<PuCommand>& cmd_in;
  devs::Port<net::ServiceRequest>& request_in;
  devs::Port<PuNotice>& notice_out;
  devs::Port<net::ServiceResponse>& response_out;
  devs::Port<telemetry::Record>& telemetry;

 private:
  struct Session {
    SessionRef ref;
    SessionState state = SessionState::requested;
  };
  struct InFlightOp {
    PuCommand cmd;
    devs::SimTime completes_at;
  };

  void handle_request(const net::ServiceRequest& req) {
    auto it = sessions_.find({req.ue_id, req.service_id});
    const bool ok =
        it != sessions_.end() && it->second.state == SessionState::active;
    net::ServiceResponse resp{req.ue_id, req.service_id, req.seq, edc_id_, ok};
    responses_.emplace(now() + devs::SimTime(latencies_.request_s),
                       std::move(resp));
  }

  void try_start_next_op() {
    if (op_ || queue_.empty()) return;
    PuCommand cmd = queue_.front();
    queue_.pop_front();
    double latency = 0.0;
    switch (cmd.kind) {
      case PuCommand::Kind::power_on:
        if (status_ != PuStatus::off) {
          fault("power_on while " + std::string(to_string(status_)));
        }
        status_ = PuStatus::powering_on;
        latency = latencies_.power_on_s;
        break;
      case PuCommand::Kind::power_off:
        if (status_ != PuStatus::on) {
          fault("power_off while " + std::string(to_string(status_)));
        }
        if (!sessions_.empty()) fault("power_off with active sessions");
        status_ = PuStatus::powering_off;
        latency = latencies_.power_off_s;
        break;
      case PuCommand::Kind::start_session: {
        if (status_ != PuStatus::on) {
          fault("start_session while " + std::string(to_string(status_)));
        }
        if (sessions_.count(cmd.session.key()) != 0) {
          fault("duplicate session " + cmd.session.ue_id + "/" +
                cmd.session.service_id);
        }
        const double cap = 1.0;  // a DVFS config with max_utilization 1 exists
        if (utilization_ + cmd.session.share > cap + kShareEpsilon) {
          fault("session share exceeds capacity");
        }
        sessions_[cmd.session.key()] = {cmd.session, SessionState::requested};
        recompute_utilization();
        status_ = PuStatus::starting_session;
        latency = latencies_.session_start_s;
        break;
      }
      case PuCommand::Kind::stop_session: {
        if (status_ != PuStatus::on) {
          fault("stop_session while " + std::string(to_string(status_)));
        }
        auto it = sessions_.find(cmd.session.key());
        if (it == sessions_.end()) {
          fault("stop_session for unknown session " + cmd.session.ue_id + "/" +
                cmd.session.service_id);
        }
        it->second.state = SessionState::closing;
        status_ = PuStatus::stopping_session;
        latency = latencies_.session_stop_s;
        break;
      }
    }
    op_ = InFlightOp{cmd, now() + devs::SimTime(latency)};
  }

  void complete_op() {
    const PuCommand cmd = op_->cmd;
    op_.reset();
    PuNotice notice;
    notice.pu = index_;
    notice.session = cmd.session;
    switch (cmd.kind) {
      case PuCommand::Kind::power_on:
        status_ = PuStatus::on;
        notice.kind = PuNotice::Kind::powered_on;
        break;
      case PuCommand::Kind::power_off:
        status_ = PuStatus::off;
        notice.kind = PuNotice::Kind::powered_off;
        break;
      case PuCommand::Kind::start_session:
        sessions_.at(cmd.session.key()).state = SessionState::active;
        status_ = PuStatus::on;
        notice.kind = PuNotice::Kind::session_started;
        break;
      case PuCommand::Kind::stop_session:
        sessions_.erase(cmd.session.key());
        recompute_utilization();
        status_ = PuStatus::on;
        notice.kind = PuNotice::Kind::session_stopped;
        break;
    }
    notice.status = status_;
    notice.utilization = utilization_;
    notice.power_w = power_w();
    notices_.push_back(notice);
  }

  void recompute_utilization() {
    double u = 0.0;
    for (const auto& [key, s] : sessions_) u += s.ref.share;
    utilization_ = u;
  }

  // Queues a telemetry row and a power_update notice whenever the observable
  // power state changed; completion notices already carry the fresh values.
  void sample_power() {
    const auto snapshot =
        std::make_tuple(status_, utilization_, active_dvfs().index, power_w());
    if (last_sample_ && *last_sample_ == snapshot) return;
    last_sample_ = snapshot;
    pending_telemetry_.push_back(telemetry::PuPowerSample{
        edc_id_, index_, to_string(status_), active_dvfs().index, utilization_,
        power_w()});
    if (notices_.empty()) {
      PuNotice n;
      n.pu = index_;
      n.kind = PuNotice::Kind::power_update;
      n.status = status_;
      n.utilization = utilization_;
      n.power_w = power_w();
      notices_.push_back(n);
    }
  }

  void rearm() {
    devs::SimTime next = devs::SimTime::infinity();
    if (!notices_.empty() || !pending_telemetry_.empty()) {
      next = now();
    } else {
      if (op_) next = op_->completes_at;
      if (!responses_.empty() && responses_.begin()->first < next) {
        next = responses_.begin()->first;
      }
    }
    if (next.is_infinite()) {
      passivate();
    } else {
      schedule_at(next);
    }
  }

  std::string edc_id_;
  int index_;
  std::vector<DvfsConfig> dvfs_table_;
  PuLatencies latencies_;
  std::shared_ptr<const PowerModel> power_model_;

  PuStatus status_ = PuStatus::off;
  double utilization_ = 0.0;
  std::map<std::pair<std::string, std::string>, Session> sessions_;
  std::deque<PuCommand> queue_;
  std::optional<InFlightOp> op_;
  std::multimap<devs::SimTime, net::ServiceResponse> responses_;
  std::vector<PuNotice> notices_;
  std::vector<telemetry::Record> pending_telemetry_;
  std::optional<std::tuple<PuStatus, double, int, double>> last_sample_;
};

}  // namespace fogsim::edge
