#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/coupled.hpp"
#include "fogsim/devs/timed.hpp"
#include "fogsim/edge/dispatch.hpp"
#include "fogsim/edge/processing_unit.hpp"
#include "fogsim/edge/resource_manager.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/pipes.hpp"
#include "fogsim/telemetry/records.hpp"

namespace fogsim::edge {

// Networking front of an EDC: decapsulates crosshaul packets into typed
// requests for the resource manager, and encapsulates responses and status
// reports as physical packets. Responses return through the access point
// that forwarded the most recent message of the session, which keeps routes
// current across handovers.
class DataCenterInterface final : public devs::TimedAtomic {
 public:
  DataCenterInterface(std::string name, std::string edc_id,
                      net::CrosshaulParams xh,
                      std::map<std::string, double> response_bits = {})
      : TimedAtomic(std::move(name)),
        xh_in(add_input<net::PhysicalPacket>("xh_in")),
        create_resp_in(add_input<net::CreateSessionResponse>("create_resp_in")),
        remove_resp_in(add_input<net::RemoveSessionResponse>("remove_resp_in")),
        svc_resp_in(add_input<net::ServiceResponse>("svc_resp_in")),
        report_in(add_input<net::EdcReport>("report_in")),
        xh_out(add_output<net::PhysicalPacket>("xh_out")),
        create_out(add_output<net::CreateSessionRequest>("create_out")),
        remove_out(add_output<net::RemoveSessionRequest>("remove_out")),
        request_out(add_output<net::ServiceRequest>("request_out")),
        edc_id_(std::move(edc_id)),
        xh_(xh),
        response_bits_(std::move(response_bits)) {}

  void output() override {
    for (const auto& m : out_create_) create_out.send(m);
    for (const auto& m : out_remove_) remove_out.send(m);
    for (const auto& m : out_request_) request_out.send(m);
    for (const auto& p : out_packets_) xh_out.send(p);
  }

  void on_internal() override {
    out_create_.clear();
    out_remove_.clear();
    out_request_.clear();
    out_packets_.clear();
    passivate();
  }

  void on_external() override {
    for (const auto& p : xh_in.bag()) decapsulate(p);
    for (const auto& r : create_resp_in.bag()) {
      send_to_ap(route_for(r.ue_id, r.service_id), r, xh_.control_bits);
    }
    for (const auto& r : remove_resp_in.bag()) {
      send_to_ap(route_for(r.ue_id, r.service_id), r, xh_.control_bits);
    }
    for (const auto& r : svc_resp_in.bag()) {
      send_to_ap(route_for(r.ue_id, r.service_id), r,
                 response_bits_for(r.service_id));
    }
    for (const auto& r : report_in.bag()) {
      send_to_ap("sdn", r, xh_.control_bits);
    }
    if (!out_packets_.empty() || !out_create_.empty() ||
        !out_remove_.empty() || !out_request_.empty()) {
      schedule_in(devs::SimTime::zero());
    }
  }

  devs::Port<net::PhysicalPacket>& xh_in;
  devs::Port<net::CreateSessionResponse>& create_resp_in;
  devs::Port<net::RemoveSessionResponse>& remove_resp_in;
  devs::Port<net::ServiceResponse>& svc_resp_in;
  devs::Port<net::EdcReport>& report_in;
  devs::Port<net::PhysicalPacket>& xh_out;
  devs::Port<net::CreateSessionRequest>& create_out;
  devs::Port<net::RemoveSessionRequest>& remove_out;
  devs::Port<net::ServiceRequest>& request_out;

 private:
  void decapsulate(const net::PhysicalPacket& p) {
    if (const auto* m = std::get_if<net::CreateSessionRequest>(&p.payload)) {
      routes_[{m->ue_id, m->service_id}] = m->via_ap;
      out_create_.push_back(*m);
    } else if (const auto* m =
                   std::get_if<net::RemoveSessionRequest>(&p.payload)) {
      routes_[{m->ue_id, m->service_id}] = m->via_ap;
      out_remove_.push_back(*m);
    } else if (const auto* m = std::get_if<net::ServiceRequest>(&p.payload)) {
      routes_[{m->ue_id, m->service_id}] = m->via_ap;
      out_request_.push_back(*m);
    } else {
      fault("unexpected crosshaul payload from " + p.source);
    }
  }

  std::string route_for(const std::string& ue, const std::string& service) {
    auto it = routes_.find({ue, service});
    if (it == routes_.end()) {
      fault("no return route for " + ue + "/" + service);
    }
    return it->second;
  }

  template <typename Msg>
  void send_to_ap(const std::string& dest, const Msg& m, double bits) {
    net::PhysicalPacket packet;
    packet.payload = m;
    packet.size_bits = bits;
    packet.tx_power_dbm = xh_.tx_power_dbm;
    packet.carrier_hz = xh_.carrier_hz;
    packet.source = edc_id_;
    packet.destination = dest;
    out_packets_.push_back(std::move(packet));
  }

  double response_bits_for(const std::string& service) const {
    auto it = response_bits_.find(service);
    return it == response_bits_.end() ? default_response_bits_ : it->second;
  }

  std::string edc_id_;
  net::CrosshaulParams xh_;
  std::map<std::string, double> response_bits_;
  double default_response_bits_ = 1000.0;
  std::map<std::pair<std::string, std::string>, std::string> routes_;
  std::vector<net::CreateSessionRequest> out_create_;
  std::vector<net::RemoveSessionRequest> out_remove_;
  std::vector<net::ServiceRequest> out_request_;
  std::vector<net::PhysicalPacket> out_packets_;
};

struct EdcParams {
  std::string id;
  net::NodePosition position;
  int pu_count = 1;
  std::vector<DvfsConfig> dvfs_table{{0, 1.0, 50.0, 50.0}};
  PuLatencies latencies;
  std::string dispatch_strategy = "minimum_workload";
  std::string hardware_policy = "always_on";
  std::string power_model = "affine";
};

// EDC coupled model: one resource manager, one data-center interface and
// pu_count processing units.
class Edc final : public devs::Coupled {
 public:
  Edc(const EdcParams& params, std::map<std::string, double> service_shares,
      net::CrosshaulParams xh,
      std::map<std::string, double> response_bits = {})
      : Coupled(params.id),
        xh_in(add_input<net::PhysicalPacket>("xh_in")),
        xh_out(add_output<net::PhysicalPacket>("xh_out")),
        telemetry_out(add_output<telemetry::Record>("telemetry_out")) {
    auto& rm = add<ResourceManager>(
        "rm", params.id, params.pu_count, std::move(service_shares),
        make_dispatch_strategy(params.dispatch_strategy),
        parse_hardware_policy(params.hardware_policy));
    auto& dci = add<DataCenterInterface>("dci", params.id, xh,
                                         std::move(response_bits));

    couple(xh_in, dci.xh_in);
    couple(dci.xh_out, xh_out);
    couple(dci.create_out, rm.create_in);
    couple(dci.remove_out, rm.remove_in);
    couple(dci.request_out, rm.request_in);
    couple(rm.create_resp_out, dci.create_resp_in);
    couple(rm.remove_resp_out, dci.remove_resp_in);
    couple(rm.svc_resp_out, dci.svc_resp_in);
    couple(rm.report_out, dci.report_in);
    couple(rm.telemetry, telemetry_out);

    auto model = make_power_model(params.power_model);
    for (int i = 0; i < params.pu_count; ++i) {
      auto& pu = add<ProcessingUnit>("pu_" + std::to_string(i), params.id, i,
                                     params.dvfs_table, params.latencies,
                                     model);
      couple(rm.cmd_port(i), pu.cmd_in);
      couple(rm.forward_port(i), pu.request_in);
      couple(pu.notice_out, rm.notice_in);
      couple(pu.response_out, dci.svc_resp_in);
      couple(pu.telemetry, telemetry_out);
      pus_.push_back(&pu);
    }
    rm_ = &rm;
  }

  ResourceManager& resource_manager() { return *rm_; }
  const std::vector<ProcessingUnit*>& processing_units() const { return pus_; }

  devs::Port<net::PhysicalPacket>& xh_in;
  devs::Port<net::PhysicalPacket>& xh_out;
  devs::Port<telemetry::Record>& telemetry_out;

 private:
  ResourceManager* rm_ = nullptr;
  std::vector<ProcessingUnit*> pus_;
};

}  // namespace fogsim::edge
