#pragma once

#include <string>
#include <vector>

#include "fogsim/devs/coupled.hpp"
#include "fogsim/trace.hpp"
#include "fogsim/ue/controller.hpp"
#include "fogsim/ue/mobility.hpp"
#include "fogsim/ue/service.hpp"

namespace fogsim::ue {

// UE coupled model: mobility source, access controller/antenna and one
// service block per application.
class UserEquipment final : public devs::Coupled {
 public:
  UserEquipment(const std::string& id, MobilityTrace trace,
                double mobility_period_s, net::RadioParams radio,
                const std::vector<ServiceConfig>& services)
      : Coupled(id),
        radio_in(add_input<net::PhysicalPacket>("radio_in")),
        pucch_out(add_output<net::PhysicalPacket>("pucch_out")),
        pusch_out(add_output<net::PhysicalPacket>("pusch_out")),
        position_out(add_output<net::PositionUpdate>("position_out")),
        telemetry_out(add_output<telemetry::Record>("telemetry_out")) {
    auto& mobility =
        add<Mobility>("mobility", std::move(trace), mobility_period_s);
    std::vector<std::string> service_ids;
    service_ids.reserve(services.size());
    for (const auto& svc : services) service_ids.push_back(svc.id);
    auto& controller = add<UeController>("ctl", id, radio, service_ids);

    couple(radio_in, controller.radio_in);
    couple(controller.pucch_out, pucch_out);
    couple(controller.pusch_out, pusch_out);
    couple(mobility.position_out, position_out);
    couple(controller.telemetry, telemetry_out);

    for (const auto& cfg : services) {
      auto& svc = add<Service>("svc_" + cfg.id, id, cfg);
      couple(controller.status_out, svc.status_in);
      couple(*find_service_port(controller, cfg.id), svc.response_in);
      couple(svc.uplink_out, controller.service_in);
      couple(svc.telemetry, telemetry_out);
      services_.push_back(&svc);
    }
    controller_ = &controller;
  }

  UeController& controller() { return *controller_; }
  const std::vector<Service*>& services() const { return services_; }

  devs::Port<net::PhysicalPacket>& radio_in;
  devs::Port<net::PhysicalPacket>& pucch_out;
  devs::Port<net::PhysicalPacket>& pusch_out;
  devs::Port<net::PositionUpdate>& position_out;
  devs::Port<telemetry::Record>& telemetry_out;

 private:
  static devs::Port<net::Payload>* find_service_port(UeController& ctl,
                                                     const std::string& svc) {
    for (auto* port : ctl.output_ports()) {
      if (port->name() == "to_" + svc) {
        return static_cast<devs::Port<net::Payload>*>(port);
      }
    }
    throw ConfigError("controller missing port to_" + svc);
  }

  UeController* controller_ = nullptr;
  std::vector<Service*> services_;
};

}  // namespace fogsim::ue
