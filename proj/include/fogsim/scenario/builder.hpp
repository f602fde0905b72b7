#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fogsim/ap/access_point.hpp"
#include "fogsim/devs/coupled.hpp"
#include "fogsim/edge/edc.hpp"
#include "fogsim/net/amf.hpp"
#include "fogsim/net/crosshaul.hpp"
#include "fogsim/net/radio_channel.hpp"
#include "fogsim/net/sdn.hpp"
#include "fogsim/scenario/config.hpp"
#include "fogsim/telemetry/transducers.hpp"
#include "fogsim/ue/ue.hpp"

namespace fogsim::scenario {

// Root model assembled from a validated scenario: the six layers are the
// device fleet, the radio interface (five channels), the access points, the
// crosshaul, the core functions and the edge federation, plus the telemetry
// sink.
struct FogModel {
  devs::Coupled root{"fog"};
  std::vector<ue::UserEquipment*> ues;
  std::vector<ap::AccessPoint*> aps;
  std::vector<edge::Edc*> edcs;
  net::Crosshaul* crosshaul = nullptr;
  net::Amf* amf = nullptr;
  net::SdnController* sdn = nullptr;
  telemetry::Transducers* transducers = nullptr;
};

inline std::unique_ptr<FogModel> build_model(
    const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  auto model = std::make_unique<FogModel>();
  auto& root = model->root;

  // radio channels: positions of every radio endpoint, receivers per side
  std::map<std::string, net::NodePosition> radio_positions;
  std::vector<std::string> ue_ids, ap_ids;
  for (const auto& ap : cfg.aps) {
    radio_positions[ap.id] = ap.position;
    ap_ids.push_back(ap.id);
  }
  for (const auto& ue_cfg : cfg.ues) {
    const auto p0 = ue_cfg.trace.position_at(0.0);
    radio_positions[ue_cfg.id] = {p0.x_m, p0.y_m};
    ue_ids.push_back(ue_cfg.id);
  }

  auto& pbch = root.add<net::RadioChannel>("pbch", phy::RadioChannelId::pbch,
                                           radio_positions, ue_ids);
  auto& pdcch = root.add<net::RadioChannel>("pdcch", phy::RadioChannelId::pdcch,
                                            radio_positions, ue_ids);
  auto& pdsch = root.add<net::RadioChannel>("pdsch", phy::RadioChannelId::pdsch,
                                            radio_positions, ue_ids);
  auto& pucch = root.add<net::RadioChannel>("pucch", phy::RadioChannelId::pucch,
                                            radio_positions, ap_ids);
  auto& pusch = root.add<net::RadioChannel>("pusch", phy::RadioChannelId::pusch,
                                            radio_positions, ap_ids);

  // crosshaul star: APs, EDCs and the core functions
  std::map<std::string, net::NodePosition> xh_nodes;
  for (const auto& ap : cfg.aps) xh_nodes[ap.id] = ap.position;
  std::map<std::string, net::NodePosition> edc_positions;
  for (const auto& edc : cfg.edcs) {
    xh_nodes[edc.id] = edc.position;
    edc_positions[edc.id] = edc.position;
  }
  xh_nodes["amf"] = cfg.core_position;
  xh_nodes["sdn"] = cfg.core_position;
  auto& crosshaul = root.add<net::Crosshaul>("crosshaul", cfg.crosshaul, xh_nodes);
  model->crosshaul = &crosshaul;

  auto& amf = root.add<net::Amf>("amf", "amf", cfg.amf_policy, cfg.crosshaul);
  model->amf = &amf;
  root.couple(amf.out, crosshaul.in);
  root.couple(crosshaul.port_to("amf"), amf.in);

  std::map<std::string, net::NodePosition> ap_positions;
  for (const auto& ap : cfg.aps) ap_positions[ap.id] = ap.position;
  std::vector<std::string> service_ids;
  for (const auto& svc : cfg.services) service_ids.push_back(svc.id);
  auto& sdn = root.add<net::SdnController>("sdn", "sdn", ap_positions,
                                           edc_positions, service_ids,
                                           cfg.crosshaul);
  model->sdn = &sdn;
  root.couple(sdn.out, crosshaul.in);
  root.couple(crosshaul.port_to("sdn"), sdn.in);

  auto& transducers = root.add<telemetry::Transducers>("transducers", out_dir,
                                                       cfg.transducers);
  model->transducers = &transducers;

  std::map<std::string, double> service_shares;
  for (const auto& svc : cfg.services) {
    service_shares[svc.id] = svc.resource_share;
  }

  for (const auto& ap_cfg : cfg.aps) {
    net::RadioParams radio = cfg.radio;
    if (!std::isnan(ap_cfg.tx_power_dbm)) radio.ap_tx_power_dbm = ap_cfg.tx_power_dbm;
    if (!std::isnan(ap_cfg.gain_db)) radio.ap_gain_db = ap_cfg.gain_db;
    if (!std::isnan(ap_cfg.noise_temp_k)) radio.ap_noise_temp_k = ap_cfg.noise_temp_k;
    if (!std::isnan(ap_cfg.bandwidth_hz)) radio.channel_bandwidth_hz = ap_cfg.bandwidth_hz;
    std::shared_ptr<const phy::BandwidthShareStrategy> strategy =
        phy::make_share_strategy(ap_cfg.share_strategy);
    auto& ap = root.add<ap::AccessPoint>(ap_cfg.id, ap_cfg.position, radio,
                                         cfg.crosshaul, strategy);
    model->aps.push_back(&ap);
    root.couple(ap.pbch_out, pbch.in);
    root.couple(ap.pdcch_out, pdcch.in);
    root.couple(ap.pdsch_out, pdsch.in);
    root.couple(ap.xh_out, crosshaul.in);
    root.couple(crosshaul.port_to(ap_cfg.id), ap.xh_in);
    root.couple(pucch.port_to(ap_cfg.id), ap.radio_in);
    root.couple(pusch.port_to(ap_cfg.id), ap.radio_in);
    root.couple(ap.telemetry_out, transducers.in);
  }

  for (const auto& edc_cfg : cfg.edcs) {
    auto& edc = root.add<edge::Edc>(edc_cfg, service_shares, cfg.crosshaul,
                                    cfg.response_bits);
    model->edcs.push_back(&edc);
    root.couple(edc.xh_out, crosshaul.in);
    root.couple(crosshaul.port_to(edc_cfg.id), edc.xh_in);
    root.couple(edc.telemetry_out, transducers.in);
  }

  for (const auto& ue_cfg : cfg.ues) {
    std::vector<ue::ServiceConfig> services;
    for (const auto& svc_id : ue_cfg.services) {
      const auto* svc = cfg.find_service(svc_id);
      if (svc == nullptr) {
        throw ConfigError("unknown service " + svc_id + " on " + ue_cfg.id);
      }
      services.push_back(*svc);
    }
    auto& ue = root.add<ue::UserEquipment>(ue_cfg.id, ue_cfg.trace,
                                           cfg.mobility_update_period_s,
                                           cfg.radio, services);
    model->ues.push_back(&ue);
    root.couple(ue.pucch_out, pucch.in);
    root.couple(ue.pusch_out, pusch.in);
    root.couple(pbch.port_to(ue_cfg.id), ue.radio_in);
    root.couple(pdcch.port_to(ue_cfg.id), ue.radio_in);
    root.couple(pdsch.port_to(ue_cfg.id), ue.radio_in);
    for (auto* channel : {&pbch, &pdcch, &pdsch, &pucch, &pusch}) {
      root.couple(ue.position_out, channel->position_in);
    }
    root.couple(ue.telemetry_out, transducers.in);
  }

  for (auto* channel : {&pbch, &pdcch, &pdsch, &pucch, &pusch}) {
    root.couple(channel->telemetry, transducers.in);
  }

  return model;
}

}  // namespace fogsim::scenario
